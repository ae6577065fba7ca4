#include "qf2/tower.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace qf2 {

// ---------------------------------------------------------------------------
// construction

int FieldTower::add_var(const std::string& name) {
  if (num_vars() >= 64) throw std::length_error("more than 64 variables");
  if (var_id(name) >= 0) throw std::invalid_argument("duplicate variable " + name);
  vars_.push_back(name);
  var_level_.push_back(depth());
  return num_vars() - 1;
}

int FieldTower::var_id(const std::string& name) const {
  for (int i = 0; i < num_vars(); ++i)
    if (vars_[i] == name) return i;
  return -1;
}

int FieldTower::add_sqrt(const Fe& a, std::string name) {
  if (depth() >= depth_limit_) throw std::length_error("tower depth limit exceeded");
  Expansion ae = expand(a, depth());
  // displaced index: lowest basis index occurring in supp(a)
  int j = -1;
  for (auto& [mask, c] : ae) {
    if (!mask) continue;
    int lo = __builtin_ctzll(mask);
    if (j < 0 || lo < j) j = lo;
  }
  if (j < 0) throw std::domain_error("sqrt argument is a square (constant expansion)");
  if (sqrt(a)) throw std::domain_error("sqrt argument is a square");
  if (name.empty()) name = "s" + std::to_string(depth() + 1);
  quads_.push_back({a, j, std::move(name), std::move(ae)});
  return depth();
}

Fe FieldTower::r_elem(int step) const {
  return Fe::pair(Fe::zero(), Fe::one(), step + 1);
}

Fe FieldTower::basis_elem(int level, int i) const {
  for (int s = level - 1; s >= 0; --s)
    if (quads_[s].displaced == i) return r_elem(s);
  return Fe::var(i);
}

std::vector<Fe> FieldTower::two_basis() const {
  std::vector<Fe> b;
  for (int i = 0; i < num_vars(); ++i) b.push_back(basis_elem(depth(), i));
  return b;
}

std::string FieldTower::basis_label(int i) const {
  for (int s = depth() - 1; s >= 0; --s)
    if (quads_[s].displaced == i) return quads_[s].name;
  return vars_[i];
}

Fe FieldTower::basis_monomial(int level, uint64_t mask) const {
  Fe m = Fe::one();
  while (mask) {
    int i = __builtin_ctzll(mask);
    mask &= mask - 1;
    m = mul(m, basis_elem(level, i));
  }
  return m;
}

bool FieldTower::extends(const FieldTower& base) const {
  if (num_vars() < base.num_vars() || depth() < base.depth()) return false;
  for (int i = 0; i < base.num_vars(); ++i)
    if (vars_[i] != base.vars_[i]) return false;
  for (int s = 0; s < base.depth(); ++s) {
    if (quads_[s].displaced != base.quads_[s].displaced) return false;
    if (!base.equal(quads_[s].a, base.quads_[s].a)) return false;
  }
  // every base variable must predate the extra quadratic steps it's below
  for (int i = 0; i < base.num_vars(); ++i)
    if (var_level_[i] != base.var_level_[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// arithmetic

Fe FieldTower::add(const Fe& x, const Fe& y) const {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  int d = std::max(x.depth, y.depth);
  if (d == 0) return Fe::of(x.rat + y.rat);
  return Fe::pair(add(x.u_at(d), y.u_at(d)), add(x.v_at(d), y.v_at(d)), d);
}

Fe FieldTower::mul(const Fe& x, const Fe& y) const {
  if (x.is_zero() || y.is_zero()) return Fe::zero();
  int d = std::max(x.depth, y.depth);
  if (d == 0) return Fe::of(x.rat * y.rat);
  const Fe& a = quads_[d - 1].a;
  const Fe &u1 = x.u_at(d), &u2 = y.u_at(d);
  Fe v1 = x.v_at(d), v2 = y.v_at(d);
  Fe u = add(mul(u1, u2), mul(a, mul(v1, v2)));
  Fe v = add(mul(u1, v2), mul(v1, u2));
  return Fe::pair(std::move(u), std::move(v), d);
}

Fe FieldTower::square(const Fe& x) const {
  if (x.depth == 0) return Fe::of(x.rat.square());
  int d = x.depth;
  // (u + v r)^2 = u^2 + a v^2, an element of the level below
  return add(square(x.sub->first), mul(quads_[d - 1].a, square(x.sub->second)));
}

Fe FieldTower::inv(const Fe& x) const {
  if (x.is_zero()) throw std::domain_error("inverse of zero");
  if (x.depth == 0) return Fe::of(x.rat.inv());
  return mul(x, inv(square(x)));  // x^2 lives strictly lower
}

// ---------------------------------------------------------------------------
// expansions

Expansion FieldTower::expand(const Fe& x, int level) const {
  if (x.depth > level) throw std::logic_error("expand: element deeper than level");
  if (level == 0) {
    // num/den = num*den / den^2; partition monomials of num*den by exponent
    // parity, then divide the halved parts by den.
    Expansion out;
    if (x.rat.is_zero()) return out;
    Gf2Poly p = x.rat.num * x.rat.den;
    std::map<uint64_t, Gf2Poly> acc;
    for (auto& t : p.terms) {
      auto [odd, even] = t.parity_split();
      uint64_t mask = 0;
      for (auto& f : odd.factors) mask |= 1ull << f.first;
      acc[mask] = acc[mask] + Gf2Poly::from(even);
    }
    for (auto& [mask, g] : acc)
      if (!g.is_zero()) out[mask] = Fe::of(Gf2RatFn(g, x.rat.den));
    return out;
  }
  Expansion cu = convert_up(expand(x.u_at(level), level - 1), level);
  Expansion cv = convert_up(expand(x.v_at(level), level - 1), level);
  uint64_t jbit = 1ull << quads_[level - 1].displaced;
  Expansion out = std::move(cu);
  for (auto& [m, c] : cv) out[m | jbit] = c;  // disjoint: bit j free in cu
  return out;
}

namespace {
// Dense exact linear solve A tau = rhs over a tower level; A is (rows x
// cols), solution unique by construction.  Plain Gauss-Jordan.
std::vector<Fe> solve_unique(const FieldTower& T, std::vector<std::vector<Fe>> A,
                             std::vector<Fe> rhs) {
  size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  std::vector<int> pivot_row(cols, -1);
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t p = rank;
    while (p < rows && A[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[rank]);
    std::swap(rhs[p], rhs[rank]);
    Fe iv = T.inv(A[rank][c]);
    for (size_t cc = c; cc < cols; ++cc) A[rank][cc] = T.mul(A[rank][cc], iv);
    rhs[rank] = T.mul(rhs[rank], iv);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || A[r][c].is_zero()) continue;
      Fe f = A[r][c];
      for (size_t cc = c; cc < cols; ++cc)
        A[r][cc] = T.add(A[r][cc], T.mul(f, A[rank][cc]));
      rhs[r] = T.add(rhs[r], T.mul(f, rhs[rank]));
    }
    pivot_row[c] = (int)rank;
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (!rhs[r].is_zero()) throw std::logic_error("expansion solve: inconsistent system");
  std::vector<Fe> tau(cols, Fe::zero());
  for (size_t c = 0; c < cols; ++c) {
    if (pivot_row[c] < 0) throw std::logic_error("expansion solve: underdetermined");
    tau[c] = rhs[pivot_row[c]];
  }
  return tau;
}
}  // namespace

Expansion FieldTower::convert_up(const Expansion& e, int level) const {
  const QuadStep& st = quads_[level - 1];
  const uint64_t jbit = 1ull << st.displaced;
  const Expansion& ae = st.a_exp;

  bool has_j = false;
  for (auto& [m, c] : e)
    if (m & jbit) {
      has_j = true;
      break;
    }
  if (!has_j) {
    // fast path: nothing to rewrite, coefficients just move up a level
    return e;
  }

  // Writing w = S + a T with S, T spanned by the j-free square-free basis
  // monomials: the unknown tau-coefficients of T are coupled only through
  // the bit-j part of supp(a), so close up the relevant masks first.
  std::vector<uint64_t> suppj;
  for (auto& [m, c] : ae)
    if (m & jbit) suppj.push_back(m);

  std::set<uint64_t> N, M;  // equations (bit j set) / unknowns (j-free)
  for (auto& [m, c] : e)
    if (m & jbit) N.insert(m);
  for (bool grew = true; grew;) {
    grew = false;
    for (uint64_t nu : std::vector<uint64_t>(N.begin(), N.end()))
      for (uint64_t eps : suppj)
        if (M.insert(nu ^ eps).second) grew = true;
    for (uint64_t mu : std::vector<uint64_t>(M.begin(), M.end()))
      for (uint64_t eps : suppj)
        if (N.insert(mu ^ eps).second) grew = true;
  }

  // e(mu,nu): coefficient of basis monomial nu in the expansion of a*m_mu,
  // which is alpha_eps * prod_{i in eps&mu} b_i with eps = mu^nu (squared
  // basis members fold into the coefficient).
  auto ecoef = [&](uint64_t mu, uint64_t nu) -> Fe {
    auto it = ae.find(mu ^ nu);
    if (it == ae.end()) return Fe::zero();
    Fe c = it->second;
    uint64_t shared = (mu ^ nu) & mu;
    if (shared) c = mul(c, basis_monomial(level - 1, shared));
    return c;
  };

  std::vector<uint64_t> mus(M.begin(), M.end()), nus(N.begin(), N.end());
  std::vector<std::vector<Fe>> A(nus.size(), std::vector<Fe>(mus.size()));
  std::vector<Fe> rhs(nus.size(), Fe::zero());
  for (size_t r = 0; r < nus.size(); ++r) {
    for (size_t c = 0; c < mus.size(); ++c) A[r][c] = ecoef(mus[c], nus[r]);
    auto it = e.find(nus[r]);
    if (it != e.end()) rhs[r] = it->second;
  }
  std::vector<Fe> tau = solve_unique(*this, std::move(A), std::move(rhs));

  // S-coefficients: s_m = c_m + sum_mu tau_mu e(mu, m) over j-free masks.
  std::set<uint64_t> targets;
  for (auto& [m, c] : e)
    if (!(m & jbit)) targets.insert(m);
  for (size_t c = 0; c < mus.size(); ++c)
    if (!tau[c].is_zero())
      for (auto& [epsm, ac] : ae)
        if (!(epsm & jbit)) targets.insert(mus[c] ^ epsm);

  Expansion out;
  for (uint64_t m : targets) {
    Fe s = Fe::zero();
    auto it = e.find(m);
    if (it != e.end()) s = it->second;
    for (size_t c = 0; c < mus.size(); ++c) {
      if (tau[c].is_zero()) continue;
      s = add(s, mul(tau[c], ecoef(mus[c], m)));
    }
    Fe t = Fe::zero();
    for (size_t c = 0; c < mus.size(); ++c)
      if (mus[c] == m) t = tau[c];
    Fe coef = Fe::pair(std::move(s), std::move(t), level);
    if (!coef.is_zero()) out[m] = std::move(coef);
  }
  // unknowns not among targets still carry t-parts
  for (size_t c = 0; c < mus.size(); ++c)
    if (!tau[c].is_zero() && !out.count(mus[c]) && !targets.count(mus[c]))
      out[mus[c]] = Fe::pair(Fe::zero(), tau[c], level);
  return out;
}

Fe FieldTower::recombine(const Expansion& e, int level) const {
  Fe x = Fe::zero();
  for (auto& [m, c] : e) x = add(x, mul(square(c), basis_monomial(level, m)));
  return x;
}

std::optional<Fe> FieldTower::sqrt(const Fe& x) const {
  if (x.is_zero()) return Fe::zero();
  int D = depth();
  if (D == 0) {
    auto s = x.rat.sqrt();
    if (!s) return std::nullopt;
    return Fe::of(*s);
  }
  // Squares of K_D = K(r), r^2 = a, all lie in K: (s + t r)^2 = s^2 + a t^2.
  // So the r-component must vanish and the rest must be in K^2 + a K^2,
  // which is a single consistency check on square expansions over B_{D-1}.
  Fe u = x;
  if (u.depth == D) {
    if (!u.sub->second.is_zero()) return std::nullopt;
    u = u.sub->first;
  }
  Expansion cu = expand(u, D - 1);
  const Expansion& ae = quads_[D - 1].a_exp;
  // u = s^2 + a t^2 forces c_nu = alpha_nu * t for every nonempty nu.
  Fe t;
  bool have_t = false;
  for (auto& [m, al] : ae) {
    if (!m) continue;
    auto it = cu.find(m);
    Fe c = it == cu.end() ? Fe::zero() : it->second;
    if (!have_t) {
      t = div(c, al);
      have_t = true;
    } else if (!equal(mul(t, al), c)) {
      return std::nullopt;
    }
  }
  if (!have_t) return std::nullopt;  // a is a square: excluded at build time
  for (auto& [m, c] : cu)
    if (m && !ae.count(m)) return std::nullopt;  // needs alpha_m * t != 0 with alpha_m = 0
  Fe a0 = Fe::zero();
  if (auto it = ae.find(0); it != ae.end()) a0 = it->second;
  Fe c0 = Fe::zero();
  if (auto it = cu.find(0); it != cu.end()) c0 = it->second;
  Fe s = add(c0, mul(a0, t));
  Fe root = Fe::pair(std::move(s), std::move(t), D);
  assert(equal(square(root), u));
  return root;
}

// ---------------------------------------------------------------------------
// specialization

std::optional<FieldTower::Spec> FieldTower::specialize(int k, std::mt19937_64& rng,
                                                       int tries) const {
  Gf2kField F(k);
  for (int attempt = 0; attempt < tries; ++attempt) {
    Spec s{F, {}, {}};
    for (int i = 0; i < num_vars(); ++i) s.var_vals.push_back(rng() & F.mask());
    bool ok = true;
    for (int q = 0; q < depth() && ok; ++q) {
      auto av = eval(quads_[q].a, s);
      if (!av) {
        ok = false;
        break;
      }
      s.quad_vals.push_back(F.sqrt(*av));  // Frobenius is onto: always exists
    }
    if (ok) return s;
  }
  return std::nullopt;
}

namespace {
uint64_t eval_poly(const Gf2Poly& p, const FieldTower::Spec& s) {
  const Gf2kField& F = s.F;
  uint64_t acc = 0;
  uint64_t order = F.mask();  // 2^k - 1, the multiplicative order
  for (auto& t : p.terms) {
    uint64_t v = 1;
    for (auto& f : t.factors) {
      uint64_t base = s.var_vals[f.first];
      if (!base) {
        v = 0;
        break;
      }
      v = F.mul(v, F.pow(base, f.second % order));  // base^order = 1
    }
    acc ^= v;
  }
  return acc;
}
}  // namespace

std::optional<uint64_t> FieldTower::eval(const Fe& x, const Spec& s) const {
  if (x.depth == 0) {
    uint64_t d = eval_poly(x.rat.den, s);
    if (!d) return std::nullopt;
    uint64_t n = eval_poly(x.rat.num, s);
    return s.F.mul(n, s.F.inv(d));
  }
  auto u = eval(x.sub->first, s);
  auto v = eval(x.sub->second, s);
  if (!u || !v) return std::nullopt;
  return *u ^ s.F.mul(*v, s.quad_vals[x.depth - 1]);
}

// ---------------------------------------------------------------------------
// text

std::string FieldTower::str_poly(const Gf2Poly& p) const {
  if (p.is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < p.terms.size(); ++i) {
    if (i) out += " + ";
    const Monomial& m = p.terms[i];
    if (m.is_one()) {
      out += "1";
      continue;
    }
    for (size_t f = 0; f < m.factors.size(); ++f) {
      if (f) out += "*";
      out += vars_[m.factors[f].first];
      if (m.factors[f].second > 1) out += "^" + std::to_string(m.factors[f].second);
    }
  }
  return out;
}

std::string FieldTower::str(const Fe& x) const {
  if (x.depth == 0) {
    if (x.rat.den.is_one()) return str_poly(x.rat.num);
    return "(" + str_poly(x.rat.num) + ")/(" + str_poly(x.rat.den) + ")";
  }
  const Fe& u = x.sub->first;
  const Fe& v = x.sub->second;
  std::string out;
  if (!u.is_zero()) out += str(u);
  if (!v.is_zero()) {
    if (!out.empty()) out += " + ";
    if (v.is_one())
      out += quads_[x.depth - 1].name;
    else
      out += "(" + str(v) + ")*" + quads_[x.depth - 1].name;
  }
  return out.empty() ? "0" : out;
}

std::string FieldTower::descriptor() const {
  std::ostringstream os;
  os << "F2(";
  bool first = true;
  for (int i = 0; i < num_vars(); ++i) {
    if (var_level_[i] != 0) continue;
    if (!first) os << ",";
    os << vars_[i];
    first = false;
  }
  os << ")";
  for (int s = 0; s < depth(); ++s) {
    os << "; sqrt:" << str(quads_[s].a);
    for (int i = 0; i < num_vars(); ++i)
      if (var_level_[i] == s + 1) os << "; " << vars_[i] << ":trans";
  }
  return os.str();
}

}  // namespace qf2
