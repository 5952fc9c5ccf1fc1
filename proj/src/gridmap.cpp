#include "gq/gridmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gq {

Vec3 quat_log(const Quat& q) {
  Vec3 v = q.vec();
  const double s = v.norm();
  if (s < 1e-300) return Vec3::Zero();
  return v * (std::atan2(s, q.w()) / s);
}

Quat quat_exp(const Vec3& v) {
  const double a = v.norm();
  if (a < 1e-300) return Quat::Identity();
  const Vec3 u = v * (std::sin(a) / a);
  return Quat(std::cos(a), u.x(), u.y(), u.z());
}

Vec3 su2_bracket(const Vec3& u, const Vec3& v) { return 2.0 * u.cross(v); }

double su2_cartan(const Vec3& u, const Vec3& v, const Vec3& w) { return u.dot(su2_bracket(v, w)); }

GridMap::GridMap(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 2 || ny < 2) throw DomainError("grid must have at least 2x2 nodes");
  nodes_.assign(static_cast<std::size_t>(nx) * ny, Quat::Identity());
  omega_.assign(static_cast<std::size_t>(nx - 1) * (ny - 1), 0.0);
}

std::size_t GridMap::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) throw DomainError("node index out of range");
  return static_cast<std::size_t>(i) * ny_ + j;
}

std::size_t GridMap::cell_index(int i, int j) const {
  if (i < 0 || j < 0 || i >= nx_ - 1 || j >= ny_ - 1) throw DomainError("cell index out of range");
  return static_cast<std::size_t>(i) * (ny_ - 1) + j;
}

void GridMap::set_node(int i, int j, const Quat& q) {
  if (std::abs(q.norm() - 1.0) > 1e-12) throw DomainError("group element is not a unit quaternion");
  nodes_[index(i, j)] = q;
}

GridMap GridMap::sample(int nx, int ny, const std::function<Quat(double, double)>& f) {
  GridMap g(nx, ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      Quat q = f(double(i) / (nx - 1), double(j) / (ny - 1));
      q.normalize();
      g.set_node(i, j, q);
    }
  return g;
}

void GridMap::write(std::ostream& os) const {
  os.precision(17);
  os << "grid " << nx_ << " " << ny_ << "\n";
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) {
      const Quat& q = node(i, j);
      os << i << " " << j << " " << q.w() << " " << q.x() << " " << q.y() << " " << q.z() << "\n";
    }
  for (int i = 0; i < nx_ - 1; ++i)
    for (int j = 0; j < ny_ - 1; ++j) os << i << " " << j << " " << omega(i, j) << "\n";
}

GridMap GridMap::read(std::istream& is) {
  // Optional header "grid NX NY"; otherwise the size is inferred from the
  // largest node index.
  struct Node {
    int i, j;
    Quat q;
    int line;
  };
  struct Cell {
    int i, j;
    double w;
    int line;
  };
  std::vector<Node> nodes;
  std::vector<Cell> cells;
  int nx = -1, ny = -1;
  std::string line;
  int lineno = 0;
  auto fail = [](int at, const std::string& what) -> void {
    throw DomainError("gridmap line " + std::to_string(at) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++lineno;
    auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "grid") {
      if (nx >= 0 || !nodes.empty() || !cells.empty()) fail(lineno, "header must come first");
      if (!(ls >> nx >> ny)) fail(lineno, "expected 'grid NX NY'");
      continue;
    }
    std::vector<double> f;
    try {
      f.push_back(std::stod(first));
    } catch (const std::exception&) {
      fail(lineno, "non-numeric field '" + first + "'");
    }
    double x;
    while (ls >> x) f.push_back(x);
    if (!ls.eof()) fail(lineno, "non-numeric field");
    for (std::size_t k = 0; k < std::min<std::size_t>(2, f.size()); ++k)
      if (f[k] != std::floor(f[k]) || f[k] < 0) fail(lineno, "indices must be non-negative integers");
    if (f.size() == 6)
      nodes.push_back({int(f[0]), int(f[1]), Quat(f[2], f[3], f[4], f[5]), lineno});
    else if (f.size() == 3)
      cells.push_back({int(f[0]), int(f[1]), f[2], lineno});
    else
      fail(lineno, "expected 'i j q0 q1 q2 q3' or 'i j omega'");
  }
  if (nx < 0) {
    nx = ny = 0;
    for (const auto& n : nodes) {
      nx = std::max(nx, n.i + 1);
      ny = std::max(ny, n.j + 1);
    }
  }
  if (nx < 2 || ny < 2) throw DomainError("gridmap: grid must have at least 2x2 nodes");
  GridMap g(nx, ny);
  std::vector<bool> seen(static_cast<std::size_t>(nx) * ny, false);
  for (const auto& n : nodes) {
    if (n.i >= nx || n.j >= ny) fail(n.line, "node index out of range");
    if (std::abs(n.q.norm() - 1.0) > 1e-12) fail(n.line, "group element is not a unit quaternion");
    g.set_node(n.i, n.j, n.q);
    seen[g.index(n.i, n.j)] = true;
  }
  for (const auto& c : cells) {
    if (c.i >= nx - 1 || c.j >= ny - 1) fail(c.line, "cell index out of range");
    g.set_omega(c.i, c.j, c.w);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw DomainError("gridmap: missing node values");
  return g;
}

GridMap GridMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open gridmap file '" + path + "'");
  return read(in);
}

namespace {

// f(p)^{-1} f(q) and f(q) f(p)^{-1}, as logarithms.
Vec3 left_log(const Quat& p, const Quat& q) { return quat_log(p.conjugate() * q); }
Vec3 right_log(const Quat& p, const Quat& q) { return quat_log(q * p.conjugate()); }

void require_same_grid(const GridMap& a, const GridMap& b) {
  if (a.nx() != b.nx() || a.ny() != b.ny()) throw DomainError("grid mismatch");
}

}  // namespace

double cross_term(const GridMap& a, const GridMap& b, int i, int j) {
  require_same_grid(a, b);
  auto edges = [&](const GridMap& g, auto log, Vec3& dx, Vec3& dy) {
    dx = 0.5 * (log(g.node(i, j), g.node(i + 1, j)) + log(g.node(i, j + 1), g.node(i + 1, j + 1)));
    dy = 0.5 * (log(g.node(i, j), g.node(i, j + 1)) + log(g.node(i + 1, j), g.node(i + 1, j + 1)));
  };
  Vec3 ax, ay, bx, by;
  edges(a, left_log, ax, ay);
  edges(b, right_log, bx, by);
  return ax.dot(by) - ay.dot(bx);
}

GridMap wzw_product(const GridMap& a, const GridMap& b) {
  require_same_grid(a, b);
  GridMap out(a.nx(), a.ny());
  for (int i = 0; i < a.nx(); ++i)
    for (int j = 0; j < a.ny(); ++j) {
      Quat q = a.node(i, j) * b.node(i, j);
      q.normalize();
      out.set_node(i, j, q);
    }
  for (int i = 0; i < a.nx() - 1; ++i)
    for (int j = 0; j < a.ny() - 1; ++j)
      out.set_omega(i, j, a.omega(i, j) + b.omega(i, j) + cross_term(a, b, i, j));
  return out;
}

AssociativityResidual wzw_associativity(const GridMap& a, const GridMap& b, const GridMap& c) {
  GridMap left = wzw_product(wzw_product(a, b), c);
  GridMap right = wzw_product(a, wzw_product(b, c));
  AssociativityResidual r;
  for (int i = 0; i < a.nx(); ++i)
    for (int j = 0; j < a.ny(); ++j)
      r.node = std::max(r.node, (left.node(i, j).coeffs() - right.node(i, j).coeffs()).norm());
  for (int i = 0; i < a.nx() - 1; ++i)
    for (int j = 0; j < a.ny() - 1; ++j)
      r.omega = std::max(r.omega, std::abs(left.omega(i, j) - right.omega(i, j)));
  return r;
}

double cross_term_defect(const SU2Field3& f1, const SU2Field3& f2, int k) {
  if (k < 1) throw DomainError("need at least one cell per side");
  const double h = 1.0 / k;
  const int n = k + 1;
  auto idx = [n](int i, int j, int l) { return (static_cast<std::size_t>(i) * n + j) * n + l; };
  std::vector<Quat> g1(n * n * n), g2(n * n * n), g(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Quat a = f1(i * h, j * h, l * h), b = f2(i * h, j * h, l * h);
        a.normalize();
        b.normalize();
        g1[idx(i, j, l)] = a;
        g2[idx(i, j, l)] = b;
        g[idx(i, j, l)] = a * b;
      }
  const int e[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto at = [&](const std::vector<Quat>& v, const int p[3]) { return v[idx(p[0], p[1], p[2])]; };
  // Edge log in direction d from corner p (integer coordinates).
  auto edge = [&](const std::vector<Quat>& v, bool left, const int p[3], int d) {
    int q[3] = {p[0] + e[d][0], p[1] + e[d][1], p[2] + e[d][2]};
    return left ? left_log(at(v, p), at(v, q)) : right_log(at(v, p), at(v, q));
  };
  // Integral of X over the face at corner p spanned by directions (u, w).
  auto face = [&](const int p[3], int u, int w) {
    int pu[3] = {p[0] + e[u][0], p[1] + e[u][1], p[2] + e[u][2]};
    int pw[3] = {p[0] + e[w][0], p[1] + e[w][1], p[2] + e[w][2]};
    Vec3 au = 0.5 * (edge(g1, true, p, u) + edge(g1, true, pw, u));
    Vec3 aw = 0.5 * (edge(g1, true, p, w) + edge(g1, true, pu, w));
    Vec3 bu = 0.5 * (edge(g2, false, p, u) + edge(g2, false, pw, u));
    Vec3 bw = 0.5 * (edge(g2, false, p, w) + edge(g2, false, pu, w));
    return au.dot(bw) - aw.dot(bu);
  };
  // Left Maurer-Cartan form of v along direction d, averaged over the four
  // parallel edges of the cube at p.
  auto theta = [&](const std::vector<Quat>& v, const int p[3], int d) {
    int u = (d + 1) % 3, w = (d + 2) % 3;
    Vec3 s = Vec3::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        int q[3] = {p[0] + a * e[u][0] + b * e[w][0], p[1] + a * e[u][1] + b * e[w][1],
                    p[2] + a * e[u][2] + b * e[w][2]};
        s += edge(v, true, q, d);
      }
    return Vec3(0.25 * s);
  };
  auto eta = [&](const std::vector<Quat>& v, const int p[3]) {
    return su2_cartan(theta(v, p, 0), theta(v, p, 1), theta(v, p, 2));
  };
  double worst = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        const int p[3] = {i, j, l};
        double flux = 0;
        for (int d = 0; d < 3; ++d) {
          int u = (d + 1) % 3, w = (d + 2) % 3;
          int q[3] = {p[0] + e[d][0], p[1] + e[d][1], p[2] + e[d][2]};
          flux += face(q, u, w) - face(p, u, w);
        }
        double delta = eta(g, p) - eta(g1, p) - eta(g2, p);
        worst = std::max(worst, std::abs(flux + delta) / (h * h * h));
      }
  return worst;
}

}  // namespace gq
