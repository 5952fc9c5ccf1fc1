#include "acceptance.hpp"
#include "oracles.hpp"

#include "gq/apath.hpp"
#include "gq/lattice.hpp"
#include "gq/symplectic_complexes.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

using namespace gq;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Mat hat(const Eigen::Vector3d& v) {
  Mat m(3, 3);
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

APath random_path(oracle::Random& r, int knots) {
  std::vector<double> t;
  std::vector<Mat> a;
  for (int j = 0; j < knots; ++j) {
    t.push_back(double(j) / (knots - 1));
    a.push_back(hat({r.uniform(-1, 1), r.uniform(-1, 1), r.uniform(-1, 1)}));
  }
  return APath(t, a);
}

}  // namespace

// A-path holonomy.
Verdict criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  oracle::Random r(88);
  const int n = 10000;
  double exp_err = 0;
  for (int k = 0; k < 20; ++k) {
    Eigen::Vector3d v(r.uniform(-1, 1), r.uniform(-1, 1), r.uniform(-1, 1));
    Mat x = hat(v.normalized() * r.uniform(0, std::sqrt(2.0)));  // |X|_F <= 2
    exp_err = std::max(exp_err, (integrate(APath::constant(x), n).holonomy - oracle::expm(x)).norm());
  }
  double concat = 0, reparam = 0;
  const Reparam phi{[](double s) { return s + std::sin(2 * M_PI * s) / (4 * M_PI); },
                    [](double s) { return 1 + std::cos(2 * M_PI * s) / 2; }};
  for (int k = 0; k < 5; ++k) {
    APath p = random_path(r, 9), q = random_path(r, 9);
    const Mat hp = integrate(p, n).holonomy, hq = integrate(q, n).holonomy;
    concat = std::max(concat, (integrate(concatenate(p, q), 2 * n).holonomy - hp * hq).norm());
    reparam = std::max(reparam, reparametrize_check(p, phi, n, 2));
  }
  // a(t) = A + t B with [A, B] != 0; errors against a fine reference
  APath lin({0.0, 1.0}, {hat({1.2, -0.4, 0.3}), hat({-0.5, 1.5, 0.9})});
  const Mat ref = integrate(lin, 1 << 13).holonomy;
  std::vector<double> err;
  for (int steps : {8, 16, 32, 64}) err.push_back((integrate(lin, steps).holonomy - ref).norm());
  double order = 0;
  for (std::size_t i = 0; i + 1 < err.size(); ++i) order += std::log2(err[i] / err[i + 1]);
  order /= double(err.size() - 1);
  const double s = seconds_since(t0);
  std::ostringstream os;
  os << "exp " << exp_err << ", concatenation " << concat << ", reparametrization " << reparam << ", order " << order
     << ", " << s << " s";
  return {exp_err < 1e-8 && concat < 1e-6 && reparam < 1e-6 && std::abs(order - 4) <= 0.3 && s < 60, os.str()};
}

namespace {

std::size_t orank(const RMatrix& a) { return a.empty() ? 0 : oracle::rank(oracle::rows_of(a)); }

/// dim H^k from ranks.
std::map<int, std::size_t> betti(const GradedComplex& c) {
  std::map<int, std::size_t> h;
  for (int k : c.degrees()) {
    const std::size_t v = c.dim(k) - orank(c.d(k)) - orank(c.d(k - 1));
    if (v) h[k] = v;
  }
  return h;
}

/// Stokes identity entry by entry.
bool stokes(const RelativeComplex& r) {
  const auto& tot = r.total();
  const int n = tot.degree();
  for (int k : tot.complex().degrees()) {
    const int j = n - 1 - k;
    if (tot.complex().dim(j) == 0) continue;
    RMatrix lhs = r.restriction(k).transpose() * r.boundary().pairing(k) * r.restriction(j);
    RMatrix a = tot.complex().d(k).transpose() * tot.pairing(k + 1);
    RMatrix b = tot.pairing(k) * tot.complex().d(j);
    if (!(lhs == (k % 2 == 0 ? a + b : a - b))) return false;
  }
  return true;
}

/// Z^k(total) = (B_0)^perp in every degree, from ranks only.
bool lemma3(const RelativeComplex& r) {
  const auto& tot = r.total();
  const auto& c = tot.complex();
  const int n = tot.degree();
  for (int k : c.degrees()) {
    const int j = n - k - 1;  // B_0^{n-k} = d_j Gamma_0^j
    RMatrix b0 = c.dim(j) ? c.d(j) * r.sub_inclusion(j) : RMatrix(c.dim(j + 1), 0);
    RMatrix pb = b0.cols() ? tot.pairing(k) * b0 : RMatrix(c.dim(k), 0);
    const std::size_t z = c.dim(k) - orank(c.d(k));
    const std::size_t perp = c.dim(k) - orank(pb);
    // Z in B0^perp iff the rows of (P B0)^T lie in the row space of d_k.
    const std::size_t rd = orank(c.d(k));
    const bool included = pb.cols() == 0 || orank(vstack(c.d(k), pb.transpose())) == rd;
    if (!included || z != perp) return false;
  }
  return true;
}

GradedComplex circle() {
  RMatrix d(3, 3);
  for (std::size_t e = 0; e < 3; ++e) {
    d(e, e) = -1;
    d(e, (e + 1) % 3) = 1;
  }
  return GradedComplex({{0, 3}, {1, 3}}, {{0, d}});
}

// Degrees -1..1 with H = (1, 1, 0): e1 -> f1, e2 and f2 closed, f3 -> g.
GradedComplex skew_complex() {
  return GradedComplex({{-1, 2}, {0, 3}, {1, 1}}, {{-1, RMatrix::from_rows({{1, 0}, {0, 0}, {0, 0}})},
                                                   {0, RMatrix::from_rows({{0, 0, 1}})}});
}

}  // namespace

// Suspension, Lemma 3, boundary Lagrangian and Stokes on every model.
Verdict criterion9() {
  std::ostringstream os;
  bool ok = true;
  std::size_t lemma1 = 0;
  for (const GradedComplex& c : {point_complex(), circle(), skew_complex()}) {
    const auto base = betti(c);
    for (int n = 1; n <= 3; ++n) {
      SuspensionResult s = suspension_check(c, n);
      std::map<int, std::size_t> want, got;
      for (const auto& [k, h] : base) want[k + n] = h;
      for (const auto& [k, h] : s.relative)
        if (h) got[k] = h;
      lemma1 += s.shifted && got == want;
    }
  }
  os << "Lemma 1 " << lemma1 << "/9; ";
  ok = ok && lemma1 == 9;

  const QuadraticLieAlgebra so3 = QuadraticLieAlgebra::so3();
  struct Model {
    std::string name;
    RelativeComplex r;
  };
  std::vector<Model> strict = {
      {"double(circle,1)", RelativeComplex::closed(double_complex(circle(), 1))},
      {"double(skew,2)", RelativeComplex::closed(double_complex(skew_complex(), 2))},
      {"interval(point,0)", interval_model(4, point_complex(), 0)},
      {"interval(point,2)", interval_model(3, point_complex(), 2)},
  };
  std::size_t l3 = 0;
  for (const auto& m : strict) {
    const Lemma3Result res = lemma3_orthogonality(m.r);
    const bool good = res.mode == Lemma3Mode::Strict && res.holds && lemma3(m.r);
    if (!good) os << m.name << " (strict " << (res.mode == Lemma3Mode::Strict) << ", library " << res.holds << ", oracle " << lemma3(m.r) << ") ";
    l3 += good;
  }
  os << "Lemma 3 " << l3 << "/" << strict.size() << "; ";
  ok = ok && l3 == strict.size();

  RelativeComplex cyl = lattice_model(Surface::Cylinder, 3, 3, so3);
  LagrangianResult lag = boundary_lagrangian(cyl);
  std::size_t image = 0, bd = 0;
  for (const auto& [k, h] : lag.image_dims) image += h;
  for (const auto& [k, h] : betti(cyl.boundary().complex())) bd += h;
  const bool lagrangian = lag.lagrangian() && 2 * image == bd && bd == 12;
  os << "cylinder boundary " << (lagrangian ? "Lagrangian" : "NOT Lagrangian") << " (" << image << " of " << bd
     << "); ";
  ok = ok && lagrangian;

  std::vector<Model> all = strict;
  all.push_back({"cylinder", cyl});
  all.push_back({"torus", lattice_model(Surface::Torus, 3, 3, so3)});
  all.push_back({"disk", lattice_model(Surface::Disk, 3, 3, so3)});
  all.push_back({"interval_cup", interval_cup_model(4, so3)});
  all.push_back({"interval both ends", interval_model(3, point_complex(), 0, true)});
  std::size_t exact = 0;
  for (const auto& m : all) exact += stokes(m.r);
  os << "Stokes exact on " << exact << "/" << all.size();
  ok = ok && exact == all.size();
  return {ok, os.str()};
}

// so(3)-valued cochains on the 3x3 and 4x4 tori.
Verdict criterion10() {
  const auto t0 = std::chrono::steady_clock::now();
  const QuadraticLieAlgebra so3 = QuadraticLieAlgebra::so3();
  std::ostringstream os;
  bool ok = true;
  for (int m : {3, 4}) {
    RelativeComplex t = lattice_model(Surface::Torus, m, m, so3);
    const auto h = betti(t.total().complex());
    const bool dims = h == std::map<int, std::size_t>{{0, 3}, {1, 6}, {2, 3}};
    CohomologyPairing p = cohomology_pairing(t.total());
    const RMatrix& i1 = p.induced.at(1);
    const bool nondeg = i1.rows() == 6 && i1.cols() == 6 && orank(i1) == 6;
    os << m << "x" << m << ": H = (" << (h.count(0) ? h.at(0) : 0) << "," << (h.count(1) ? h.at(1) : 0) << ","
       << (h.count(2) ? h.at(2) : 0) << "), H^1 pairing " << (nondeg ? "nondegenerate" : "DEGENERATE") << "; ";
    ok = ok && dims && nondeg;
  }
  const double s = seconds_since(t0);
  os << s << " s";
  return {ok && s < 10, os.str()};
}

// Mapping spaces V[1] -> Y.
Verdict criterion11() {
  std::ostringstream os;
  bool ok = true;
  for (int m = 1; m <= 4; ++m) {
    DarbouxChart y = DarbouxChart::cotangent1(m);
    NMapSpace s = nmap_space(y, 1);
    bool canonical = s.components.size() == static_cast<std::size_t>(2 * m) && s.total_dim() == std::size_t(2 * m);
    // each x_a pairs with p_a alone, with entry +-1, antisymmetrically
    for (int a = 0; a < 2 * m && canonical; ++a)
      for (int b = 0; b < 2 * m; ++b) {
        const bool partner = (a < m && b == a + m) || (a >= m && b == a - m);
        const Rational v = s.pairing(a, b);
        canonical = canonical && (partner ? (v == 1 || v == -1) : v == 0) && v == -s.pairing(b, a);
      }
    ok = ok && canonical && s.nondegenerate();
  }
  os << "T*[1]R^m, m = 1..4: " << (ok ? "2m components, canonical pairing" : "MISMATCH") << "; ";
  bool binom = true;
  for (int m = 1; m <= 3; ++m) {
    NMapSpace s = nmap_space(DarbouxChart::standard_courant(m), 2);
    for (const auto& c : s.components) binom = binom && c.forms.size() == oracle::binomial(2, c.weight);
    binom = binom && s.components.size() == static_cast<std::size_t>(4 * m) && s.nondegenerate();
  }
  os << "Sigma_2 dims " << (binom ? "binomial" : "MISMATCH");
  return {ok && binom, os.str()};
}

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// The verification programs pass through the CLI with byte-identical reports.
Verdict criterion12() {
  namespace fs = std::filesystem;
  const fs::path dir = GQ_VERIFICATION_DIR;
  const fs::path tmp = fs::temp_directory_path() / ("gq-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  std::vector<fs::path> programs;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".gq") programs.push_back(e.path());
  std::sort(programs.begin(), programs.end());
  std::size_t passed = 0, stable = 0;
  std::string bad;
  for (const auto& p : programs) {
    std::string reports[2];
    bool exit_ok = true;
    for (int run = 0; run < 2; ++run) {
      const fs::path out = tmp / (p.stem().string() + std::to_string(run) + ".json");
      const std::string cmd = std::string("\"") + GQ_CLI + "\" run \"" + p.string() + "\" --report \"" + out.string() +
                              "\" > /dev/null 2>&1";
      exit_ok = exit_ok && std::system(cmd.c_str()) == 0;
      reports[run] = slurp(out);
    }
    passed += exit_ok;
    const bool same = !reports[0].empty() && reports[0] == reports[1];
    stable += same;
    if ((!exit_ok || !same) && bad.empty()) bad = p.filename().string();
  }
  fs::remove_all(tmp);
  std::ostringstream os;
  os << programs.size() << " programs, " << passed << " exit 0, " << stable << " byte-stable"
     << (bad.empty() ? "" : " (first problem: " + bad + ")");
  return {!programs.empty() && passed == programs.size() && stable == programs.size(), os.str()};
}

int main() {
  Verdict (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
                             criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
  int failed = 0;
  for (int i = 0; i < 12; ++i) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << v.detail << std::endl;
  }
  return failed ? 1 : 0;
}
