#include "gq/lattice.hpp"

#include <map>
#include <set>

namespace gq {

namespace {

int sign(int k) { return (k & 1) ? -1 : 1; }

// A complex given on an explicit homogeneous basis; used to assemble models
// before splitting them into degree blocks.
struct Flat {
  std::vector<int> degree;
  std::vector<std::map<std::size_t, Rational>> d;  // d[source][target]
  std::map<std::pair<std::size_t, std::size_t>, Rational> pairing;
  int pairing_degree = 0;

  std::size_t add(int deg) {
    degree.push_back(deg);
    d.emplace_back();
    return degree.size() - 1;
  }
  void set_d(std::size_t src, std::size_t tgt, const Rational& c) {
    if (c != 0) d[src][tgt] += c;
  }
  void set_pair(std::size_t a, std::size_t b, const Rational& c) {
    if (c != 0) pairing[{a, b}] += c;
  }
  std::size_t size() const { return degree.size(); }
};

// Position of each basis element inside its degree block.
struct Blocks {
  std::map<int, std::size_t> dims;
  std::vector<std::size_t> pos;
};

Blocks blocks_of(const Flat& f) {
  Blocks b;
  for (std::size_t i = 0; i < f.size(); ++i) b.pos.push_back(b.dims[f.degree[i]]++);
  return b;
}

SymplecticComplex to_symplectic(const Flat& f) {
  Blocks b = blocks_of(f);
  auto dim = [&](int k) { return b.dims.count(k) ? b.dims[k] : std::size_t(0); };
  std::map<int, RMatrix> d, p;
  for (const auto& [k, n] : b.dims) {
    if (dim(k + 1)) d[k] = RMatrix(dim(k + 1), n);
    if (dim(f.pairing_degree - k)) p[k] = RMatrix(n, dim(f.pairing_degree - k));
  }
  for (std::size_t s = 0; s < f.size(); ++s)
    for (const auto& [t, c] : f.d[s]) d.at(f.degree[s])(b.pos[t], b.pos[s]) += c;
  for (const auto& [ab, c] : f.pairing) p.at(f.degree[ab.first])(b.pos[ab.first], b.pos[ab.second]) += c;
  return SymplecticComplex(GradedComplex(b.dims, std::move(d)), f.pairing_degree, std::move(p));
}

// Koszul tensor product: d(a b) = da b + (-1)^|a| a db and
// <a b, a' b'> = (-1)^{|b||a'|} <a, a'> <b, b'>.
Flat tensor(const Flat& a, const Flat& b) {
  Flat out;
  out.pairing_degree = a.pairing_degree + b.pairing_degree;
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j) out.add(a.degree[i] + b.degree[j]);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      for (const auto& [t, c] : a.d[i]) out.set_d(i * nb + j, t * nb + j, c);
      for (const auto& [t, c] : b.d[j]) out.set_d(i * nb + j, i * nb + t, c * sign(a.degree[i]));
    }
  for (const auto& [aa, ca] : a.pairing)
    for (const auto& [bb, cb] : b.pairing)
      out.set_pair(aa.first * nb + bb.first, aa.second * nb + bb.second,
                   ca * cb * sign(b.degree[bb.first] * a.degree[aa.second]));
  return out;
}

// Restriction of a flat to a subset of its basis closed under d.
Flat restrict(const Flat& f, const std::vector<std::size_t>& keep, std::vector<std::size_t>& index) {
  index.assign(f.size(), SIZE_MAX);
  Flat out;
  out.pairing_degree = f.pairing_degree;
  for (std::size_t i : keep) index[i] = out.add(f.degree[i]);
  for (std::size_t i : keep)
    for (const auto& [t, c] : f.d[i]) {
      if (index[t] == SIZE_MAX) throw StructureError("restricted basis is not closed under d");
      out.set_d(index[i], index[t], c);
    }
  for (const auto& [ab, c] : f.pairing)
    if (index[ab.first] != SIZE_MAX && index[ab.second] != SIZE_MAX) out.set_pair(index[ab.first], index[ab.second], c);
  return out;
}

// Chain map between flats given on basis elements, split into degree blocks.
std::map<int, RMatrix> to_blocks(const Flat& src, const Flat& tgt,
                                 const std::vector<std::map<std::size_t, Rational>>& map) {
  Blocks bs = blocks_of(src), bt = blocks_of(tgt);
  std::map<int, RMatrix> out;
  for (const auto& [k, n] : bs.dims)
    if (bt.dims.count(k)) out[k] = RMatrix(bt.dims[k], n);
  for (std::size_t s = 0; s < map.size(); ++s)
    for (const auto& [t, c] : map[s]) out.at(src.degree[s])(bt.pos[t], bs.pos[s]) += c;
  return out;
}

Flat fibre(const QuadraticLieAlgebra& g) {
  Flat f;
  for (std::size_t i = 0; i < g.dim(); ++i) f.add(0);
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) f.set_pair(i, j, g.metric()(i, j));
  return f;
}

Flat from_symplectic(const SymplecticComplex& s, std::map<int, std::size_t>& first) {
  Flat f;
  f.pairing_degree = s.degree();
  const GradedComplex& c = s.complex();
  for (int k : c.degrees()) {
    first[k] = f.size();
    for (std::size_t i = 0; i < c.dim(k); ++i) f.add(k);
  }
  for (int k : c.degrees()) {
    if (!first.count(k + 1)) continue;
    RMatrix d = c.d(k);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t col = 0; col < d.cols(); ++col) f.set_d(first[k] + col, first[k + 1] + r, d(r, col));
  }
  for (int k : c.degrees()) {
    if (!first.count(s.degree() - k)) continue;
    RMatrix p = s.pairing(k);
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t col = 0; col < p.cols(); ++col) f.set_pair(first[k] + r, first[s.degree() - k] + col, p(r, col));
  }
  return f;
}

// Relative complex of a triangulated surface with values in a fibre flat.
RelativeComplex surface_model(const Simplicial2& k, const Flat& fib) {
  std::map<std::array<std::size_t, 2>, std::size_t> edge_index;
  for (std::size_t e = 0; e < k.edges.size(); ++e) edge_index[k.edges[e]] = e;
  auto edge = [&](std::size_t a, std::size_t b) {
    auto it = edge_index.find({a, b});
    if (it == edge_index.end()) throw StructureError("triangle edge missing from the edge list");
    return it->second;
  };
  Flat base;
  base.pairing_degree = 2;
  const std::size_t nv = k.vertices, ne = k.edges.size();
  for (std::size_t v = 0; v < nv; ++v) base.add(0);
  for (std::size_t e = 0; e < ne; ++e) base.add(1);
  for (std::size_t t = 0; t < k.triangles.size(); ++t) base.add(2);
  const std::size_t E0 = nv, T0 = nv + ne;
  for (std::size_t e = 0; e < ne; ++e) {
    base.set_d(k.edges[e][1], E0 + e, 1);
    base.set_d(k.edges[e][0], E0 + e, -1);
  }
  std::map<std::size_t, Rational> bd_chain;  // edge -> coefficient in the boundary of the fundamental chain
  for (std::size_t t = 0; t < k.triangles.size(); ++t) {
    auto [a, b, c] = k.triangles[t];
    const int s = k.orientation[t];
    const std::size_t ab = edge(a, b), bc = edge(b, c), ac = edge(a, c);
    base.set_d(E0 + bc, T0 + t, 1);
    base.set_d(E0 + ac, T0 + t, -1);
    base.set_d(E0 + ab, T0 + t, 1);
    // Cup products integrated over the fundamental chain.
    base.set_pair(a, T0 + t, s);
    base.set_pair(E0 + ab, E0 + bc, s);
    base.set_pair(T0 + t, c, s);
    bd_chain[bc] += s;
    bd_chain[ac] -= s;
    bd_chain[ab] += s;
  }
  // Boundary cycle.
  Flat bd;
  bd.pairing_degree = 1;
  std::map<std::size_t, std::size_t> bv;  // surface vertex -> boundary vertex
  std::vector<std::pair<std::size_t, Rational>> be;
  for (const auto& [e, c] : bd_chain) {
    if (c == 0) continue;
    if (c != 1 && c != -1) throw StructureError("fundamental chain is not a manifold chain");
    be.push_back({e, c});
    for (std::size_t v : k.edges[e])
      if (!bv.count(v)) bv[v] = 0;
  }
  std::size_t next = 0;
  for (auto& [v, idx] : bv) idx = next++;
  for (std::size_t v = 0; v < bv.size(); ++v) bd.add(0);
  for (std::size_t i = 0; i < be.size(); ++i) bd.add(1);
  const std::size_t BE0 = bv.size();
  for (std::size_t i = 0; i < be.size(); ++i) {
    const auto& [e, c] = be[i];
    const std::size_t a = bv[k.edges[e][0]], b = bv[k.edges[e][1]];
    bd.set_d(b, BE0 + i, 1);
    bd.set_d(a, BE0 + i, -1);
    bd.set_pair(a, BE0 + i, c);
    bd.set_pair(BE0 + i, b, c);
  }
  std::vector<std::map<std::size_t, Rational>> r(base.size());
  for (const auto& [v, idx] : bv) r[v][idx] = 1;
  for (std::size_t i = 0; i < be.size(); ++i) r[E0 + be[i].first][BE0 + i] = 1;

  Flat total = tensor(base, fib), boundary = tensor(bd, fib);
  const std::size_t nf = fib.size();
  std::vector<std::map<std::size_t, Rational>> rf(total.size());
  for (std::size_t s = 0; s < base.size(); ++s)
    for (const auto& [t, c] : r[s])
      for (std::size_t j = 0; j < nf; ++j) rf[s * nf + j][t * nf + j] = c;
  return RelativeComplex(to_symplectic(total), to_symplectic(boundary), to_blocks(total, boundary, rf));
}

}  // namespace

Simplicial2 Simplicial2::grid(int m1, int m2, bool periodic1, bool periodic2) {
  if (m1 < 1 || m2 < 1) throw DomainError("grid needs at least one square per direction");
  if ((periodic1 && m1 < 3) || (periodic2 && m2 < 3))
    throw DomainError("periodic directions need at least 3 squares");
  const int n1 = periodic1 ? m1 : m1 + 1, n2 = periodic2 ? m2 : m2 + 1;
  auto vid = [&](int i, int j) {
    return static_cast<std::size_t>((i % n1 + n1) % n1) * n2 + static_cast<std::size_t>((j % n2 + n2) % n2);
  };
  Simplicial2 k;
  k.vertices = static_cast<std::size_t>(n1) * n2;
  std::set<std::array<std::size_t, 2>> edges;
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m2; ++j) {
      const std::size_t v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      k.triangles.push_back({v00, v10, v11});
      k.orientation.push_back(1);
      k.triangles.push_back({v00, v01, v11});
      k.orientation.push_back(-1);
      for (auto e : {std::array<std::size_t, 2>{v00, v10}, {v10, v11}, {v00, v11}, {v00, v01}, {v01, v11}})
        edges.insert(e);
    }
  k.edges.assign(edges.begin(), edges.end());
  return k;
}

RelativeComplex simplicial_model(const Simplicial2& k, const QuadraticLieAlgebra& g) {
  return surface_model(k, fibre(g));
}

RelativeComplex lattice_model(Surface s, int m1, int m2, const QuadraticLieAlgebra& g) {
  if (m1 < 3 || m2 < 3) throw DomainError("lattice models need at least 3 cells per direction");
  switch (s) {
    case Surface::Torus:
      return simplicial_model(Simplicial2::grid(m1, m2, true, true), g);
    case Surface::Cylinder:
      return simplicial_model(Simplicial2::grid(m1, m2, true, false), g);
    case Surface::Disk:
      return simplicial_model(Simplicial2::grid(m1, m2, false, false), g);
  }
  throw DomainError("unknown surface");
}

RelativeComplex interval_cup_model(int m, const QuadraticLieAlgebra& g) {
  if (m < 1) throw DomainError("interval needs at least one segment");
  Flat base;
  base.pairing_degree = 1;
  const std::size_t nv = static_cast<std::size_t>(m) + 1;
  for (std::size_t v = 0; v < nv; ++v) base.add(0);
  for (int e = 0; e < m; ++e) base.add(1);
  for (std::size_t e = 0; e + 1 < nv; ++e) {
    base.set_d(e + 1, nv + e, 1);
    base.set_d(e, nv + e, -1);
    base.set_pair(e, nv + e, 1);      // u(a) v[a,b]
    base.set_pair(nv + e, e + 1, 1);  // v[a,b] u(b)
  }
  Flat bd;
  bd.pairing_degree = 0;
  bd.add(0);
  bd.add(0);
  bd.set_pair(0, 0, -1);
  bd.set_pair(1, 1, 1);
  Flat fib = fibre(g);
  Flat total = tensor(base, fib), boundary = tensor(bd, fib);
  const std::size_t nf = fib.size();
  std::vector<std::map<std::size_t, Rational>> r(total.size());
  for (std::size_t j = 0; j < nf; ++j) {
    r[0 * nf + j][0 * nf + j] = 1;
    r[(nv - 1) * nf + j][1 * nf + j] = 1;
  }
  return RelativeComplex(to_symplectic(total), to_symplectic(boundary), to_blocks(total, boundary, r));
}

RelativeComplex interval_model(int m, const GradedComplex& c, int n, bool both_ends) {
  if (m < 1) throw DomainError("interval needs at least one segment");
  // Base: primal cochains P (vertices, edges) and dual cochains D vanishing
  // at the ends (one per edge in degree 0, one per vertex in degree 1).
  Flat base;
  base.pairing_degree = 1;
  const std::size_t nv = static_cast<std::size_t>(m) + 1, ne = static_cast<std::size_t>(m);
  std::vector<std::size_t> pv, pe, dv, de;
  for (std::size_t v = 0; v < nv; ++v) pv.push_back(base.add(0));
  for (std::size_t e = 0; e < ne; ++e) pe.push_back(base.add(1));
  for (std::size_t e = 0; e < ne; ++e) dv.push_back(base.add(0));
  for (std::size_t v = 0; v < nv; ++v) de.push_back(base.add(1));
  for (std::size_t e = 0; e < ne; ++e) {
    base.set_d(pv[e + 1], pe[e], 1);
    base.set_d(pv[e], pe[e], -1);
    // (d b)_v = b_v - b_{v-1}
    base.set_d(dv[e], de[e], 1);
    base.set_d(dv[e], de[e + 1], -1);
  }
  for (std::size_t v = 0; v < nv; ++v) {
    base.set_pair(pv[v], de[v], 1);
    base.set_pair(de[v], pv[v], 1);
  }
  for (std::size_t e = 0; e < ne; ++e) {
    base.set_pair(pe[e], dv[e], 1);
    base.set_pair(dv[e], pe[e], 1);
  }
  std::map<int, std::size_t> first;
  SymplecticComplex dbl = double_complex(c, n);
  Flat fib = from_symplectic(dbl, first);
  // C-part of the fibre: the first dim C^k elements of each degree block.
  std::vector<bool> c_part(fib.size(), false);
  for (const auto& [k, off] : first)
    for (std::size_t i = 0; i < c.dim(k); ++i) c_part[off + i] = true;
  Flat full = tensor(base, fib);
  const std::size_t nf = fib.size();
  std::set<std::size_t> primal(pv.begin(), pv.end());
  primal.insert(pe.begin(), pe.end());
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = 0; j < nf; ++j)
      if (primal.count(i) == c_part[j]) keep.push_back(i * nf + j);
  std::vector<std::size_t> index;
  Flat total = restrict(full, keep, index);

  Flat ends;
  ends.pairing_degree = 0;
  ends.add(0);
  ends.set_pair(0, 0, -1);
  if (both_ends) {
    ends.add(0);
    ends.set_pair(1, 1, 1);
  }
  Flat boundary = tensor(ends, fib);
  std::vector<std::map<std::size_t, Rational>> r(total.size());
  for (std::size_t j = 0; j < nf; ++j) {
    if (!c_part[j]) continue;
    r[index[pv.front() * nf + j]][0 * nf + j] = 1;
    if (both_ends) r[index[pv.back() * nf + j]][1 * nf + j] = 1;
  }
  return RelativeComplex(to_symplectic(total), to_symplectic(boundary), to_blocks(total, boundary, r));
}

GradedComplex point_complex() { return GradedComplex({{0, 1}}, {}); }

}  // namespace gq
