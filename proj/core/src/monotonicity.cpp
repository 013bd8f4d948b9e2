#include "bdspectra/monotonicity.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "bdspectra/eigen_tri.hpp"
#include "bdspectra/errors.hpp"
#include "bdspectra/parallel.hpp"
#include "bdspectra/spectral_calculus.hpp"

namespace bdspectra {

namespace {

constexpr double kSnap = 1e-12;
constexpr double kEqualityTol = 1e-10;
constexpr double kCommuteTol = 1e-9;
constexpr double kEigMatchTol = 1e-7;

Quantity value_of(const Dual& x) { return Quantity::exact(x.value); }
Quantity deriv_of(const Dual& x) { return Quantity::exact(x.deriv); }
Quantity qsqrt(Quantity x) { return {std::sqrt(x.value), std::sqrt(x.mag)}; }
Quantity qmax(Quantity x, Quantity y) { return x.value >= y.value ? x : y; }
Quantity qmin(Quantity x, Quantity y) { return x.value <= y.value ? x : y; }

std::string idx(const char* base, long j) { return std::string(base) + "_" + std::to_string(j); }

bool holds(Quantity q, Rel r, double tol) {
  const int s = q.sign(tol);
  switch (r) {
    case Rel::gt: return s > 0;
    case Rel::ge: return s >= 0;
    case Rel::lt: return s < 0;
    case Rel::le: return s <= 0;
    case Rel::ne: return s != 0;
    case Rel::eq: return s == 0;
  }
  return false;
}

// Conditions are written for the ↑ set and mirrored for ↓.
class Builder {
 public:
  explicit Builder(Direction dir) : dir_(dir) {}

  Condition operator()(std::string label, Quantity q, Rel r, double tol = kSnap) const {
    const Rel rel = dir_ == Direction::down ? mirror(r) : r;
    return Condition{std::move(label), q.value, q.mag, rel, tol, holds(q, rel, tol)};
  }

 private:
  Direction dir_;
};

IndexWitness witness(std::size_t j, std::vector<std::vector<Condition>> disjuncts) {
  IndexWitness w;
  w.j = j;
  w.disjuncts = std::move(disjuncts);
  for (std::size_t i = 0; i < w.disjuncts.size(); ++i) {
    const auto& d = w.disjuncts[i];
    if (std::all_of(d.begin(), d.end(), [](const Condition& c) { return c.holds; })) {
      w.disjunct = static_cast<int>(i + 1);
      break;
    }
  }
  return w;
}

// "Some candidate is nonzero": records the first nonzero candidate, or the
// largest one when all vanish.
Condition some_nonzero(const std::string& set, const std::vector<std::pair<std::string, Quantity>>& cands) {
  Condition out{set + ": all zero", 0.0, 0.0, Rel::ne, kSnap, false};
  double best = -1.0;
  for (const auto& [label, q] : cands) {
    if (holds(q, Rel::ne, kSnap)) return Condition{set + ": " + label, q.value, q.mag, Rel::ne, kSnap, true};
    if (std::abs(q.value) > best) {
      best = std::abs(q.value);
      out = Condition{set + ": " + label, q.value, q.mag, Rel::ne, kSnap, false};
    }
  }
  return out;
}

Condition literal_flag(std::string label, bool flag) {
  return Condition{std::move(label), flag ? 0.0 : 1.0, 0.0, Rel::eq, 0.0, flag};
}

void finish(CriterionVerdict& v) {
  v.member = std::all_of(v.indices.begin(), v.indices.end(),
                         [](const IndexWitness& w) { return w.disjunct != 0; }) &&
             std::all_of(v.global.begin(), v.global.end(), [](const Condition& c) { return c.holds; });
}

struct BdContext {
  const BirthDeathSpec* spec = nullptr;
  BirthDeathSample s;
  std::size_t n = 0;
  std::vector<Quantity> a, b, da, db;
  std::vector<Quantity> P, dP, o, ell;  // j < n
  std::vector<Quantity> d, dd;          // j <= n
  std::vector<Quantity> de, dsqrte;     // j < n, e_0 = 0
  Quantity m1, m2, mu;

  Quantity dP_at(long j) const { return j < 0 ? Quantity{} : dP[static_cast<std::size_t>(j)]; }
  Quantity ell_at(long j) const { return j < 0 ? Quantity{} : ell[static_cast<std::size_t>(j)]; }
  // W_j = a_j b_j' - a_j' b_j
  Quantity W(std::size_t j) const { return a[j] * db[j] - da[j] * b[j]; }
};

BdContext make_context(const BirthDeathSpec& spec, double t) {
  BdContext c;
  c.spec = &spec;
  c.s = sample(spec, t);
  c.n = c.s.n();
  for (std::size_t j = 0; j <= c.n; ++j) {
    c.a.push_back(value_of(c.s.a[j]));
    c.b.push_back(value_of(c.s.b[j]));
    c.da.push_back(deriv_of(c.s.a[j]));
    c.db.push_back(deriv_of(c.s.b[j]));
    c.d.push_back(c.a[j] + c.b[j]);
    c.dd.push_back(c.da[j] + c.db[j]);
  }
  for (std::size_t j = 0; j < c.n; ++j) {
    c.P.push_back(c.a[j] * c.b[j + 1]);
    c.dP.push_back(c.da[j] * c.b[j + 1] + c.a[j] * c.db[j + 1]);
    c.o.push_back(qsqrt(c.P[j]));
    c.ell.push_back(c.dP[j] / (Quantity::exact(2.0) * c.P[j]));
  }
  for (std::size_t j = 0; j < c.n; ++j) {
    if (j == 0) {
      c.de.emplace_back();
      c.dsqrte.emplace_back();
      continue;
    }
    const Quantity e = c.P[j - 1] / c.P[j];
    const Quantity de = (c.dP[j - 1] * c.P[j] - c.P[j - 1] * c.dP[j]) / (c.P[j] * c.P[j]);
    c.de.push_back(de);
    c.dsqrte.push_back(de / (Quantity::exact(2.0) * qsqrt(e)));
  }
  c.m1 = c.d[0];
  c.mu = c.d[0];
  for (std::size_t j = 1; j <= c.n; ++j) {
    c.m1 = qmax(c.m1, c.d[j]);
    c.mu = qmin(c.mu, c.d[j]);
  }
  c.m2 = Quantity::exact(bounds(c.s).m2);
  return c;
}

struct RwContext {
  const RandomWalkSpec* rw = nullptr;
  RandomWalkSample s;
  std::size_t n = 0;
  std::vector<Quantity> c, dc;
  std::vector<Quantity> ddelta;  // j < n
};

RwContext make_context(const RandomWalkSpec& rw, double t) {
  RwContext r;
  r.rw = &rw;
  r.s = sample(rw, t);
  r.n = r.s.n();
  for (const Dual& x : r.s.c) {
    r.c.push_back(value_of(x));
    r.dc.push_back(deriv_of(x));
  }
  const Quantity one = Quantity::exact(1.0);
  for (std::size_t j = 0; j < r.n; ++j)
    r.ddelta.push_back(-r.dc[j + 1] * r.c[j] + (one - r.c[j + 1]) * r.dc[j]);
  return r;
}

CriterionVerdict start(CriterionId id, double t) {
  CriterionVerdict v;
  v.id = id;
  v.t = t;
  return v;
}

CriterionVerdict ismail_min(const BdContext& c, CriterionId id) {
  const Builder q(id.direction);
  auto v = start(id, c.s.t);
  v.global.push_back(literal_flag("b_0 = 0 (literal)", c.spec->b0_identically_zero()));
  v.indices.push_back(witness(0, {{q("a'_0", c.da[0], Rel::gt)}}));
  for (std::size_t j = 1; j <= c.n; ++j)
    v.indices.push_back(witness(j, {{q(idx("a'", static_cast<long>(j)), c.da[j], Rel::gt),
                                     q(idx("-W", static_cast<long>(j)), -c.W(j), Rel::gt)}}));
  finish(v);
  return v;
}

CriterionVerdict ismail_max(const BdContext& c, CriterionId id) {
  const Builder q(id.direction);
  auto v = start(id, c.s.t);
  for (std::size_t j = 0; j <= c.n; ++j) {
    const auto jl = static_cast<long>(j);
    v.indices.push_back(witness(j, {{q(idx("a'", jl), c.da[j], Rel::gt), q(idx("b'", jl), c.db[j], Rel::gt)}}));
  }
  finish(v);
  return v;
}

Condition n_set(const BdContext& c) {
  std::vector<std::pair<std::string, Quantity>> cands;
  for (std::size_t j = 0; j < c.n; ++j) cands.emplace_back(idx("P'", static_cast<long>(j)), c.dP[j]);
  for (std::size_t j = 0; j <= c.n; ++j) cands.emplace_back(idx("d'", static_cast<long>(j)), c.dd[j]);
  return some_nonzero("N", cands);
}

CriterionVerdict b_max(const BdContext& c, CriterionId id) {
  const Builder q(id.direction);
  auto v = start(id, c.s.t);
  const auto n = static_cast<long>(c.n);
  for (long j = 0; j <= n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const long li = j < n ? j : n - 1;
    const Quantity ell = c.ell_at(li);
    const Quantity f = c.dd[ju] + ell * (c.m1 - c.d[ju]);
    const Quantity g = c.dd[ju] + ell * (c.m2 - c.d[ju]);
    const auto dd = q(idx("d'", j), c.dd[ju], Rel::ge);
    const auto dd_neg = q(idx("d'", j), c.dd[ju], Rel::le);
    const auto fc = q(idx("f", j), f, Rel::ge);
    const auto gc = q(idx("g", j), g, Rel::gt);
    if (j < n) {
      const auto e = q(idx("e'", j), c.de[ju], Rel::ge);
      v.indices.push_back(witness(ju, {{q(idx("P'", j - 1), c.dP_at(j - 1), Rel::ge),
                                        q(idx("P'", j), c.dP[ju], Rel::ge), dd},
                                       {q(idx("P'", j), c.dP[ju], Rel::le), gc, e},
                                       {dd_neg, fc, e}}));
    } else {
      v.indices.push_back(witness(ju, {{q(idx("P'", j - 1), c.dP_at(j - 1), Rel::ge), dd},
                                       {q(idx("P'", j - 1), c.dP_at(j - 1), Rel::le), gc},
                                       {dd_neg, fc}}));
    }
  }
  v.global.push_back(n_set(c));
  finish(v);
  return v;
}

CriterionVerdict btilde_max(const BdContext& c, CriterionId id) {
  const Builder q(id.direction);
  auto v = start(id, c.s.t);
  std::vector<std::pair<std::string, Quantity>> cands;
  for (std::size_t j = 0; j <= c.n; ++j) {
    const auto jl = static_cast<long>(j);
    const Quantity w = c.W(j);
    const Quantity lead = c.da[j] * c.m2 + w;
    const std::string lead_label = "a'_" + std::to_string(j) + " m2 + W_" + std::to_string(j);
    if (j == 0) {
      v.indices.push_back(witness(j, {{q(lead_label, lead, Rel::ge)}}));
    } else {
      v.indices.push_back(witness(j, {{q(idx("W", jl), w, Rel::ge), q(lead_label, lead, Rel::ge)}}));
      cands.emplace_back(idx("W", jl), w);
    }
    cands.emplace_back(lead_label, lead);
  }
  v.global.push_back(some_nonzero("N~", cands));
  finish(v);
  return v;
}

// Per-index set j of the lambda_min expansion.
IndexWitness b_min_index(const BdContext& c, const Builder& q, long j) {
  const auto n = static_cast<long>(c.n);
  const auto ju = static_cast<std::size_t>(j);
  const long li = j < n ? j : n - 1;
  const Quantity ell = c.ell_at(li);
  const Quantity h = c.dd[ju] - ell * c.d[ju];
  const Quantity l = c.dd[ju] + ell * (c.mu - c.d[ju]);
  const auto dd = q(idx("d'", j), c.dd[ju], Rel::ge);
  const auto dd_neg = q(idx("d'", j), c.dd[ju], Rel::le);
  const auto hc = q(idx("h", j), h, Rel::ge);
  const auto lc = q(idx("l", j), l, Rel::ge);
  if (j < n) {
    const auto e = q(idx("e'", j), c.de[ju], Rel::le);
    return witness(ju, {{q(idx("P'", j - 1), c.dP_at(j - 1), Rel::le), q(idx("P'", j), c.dP[ju], Rel::le), dd},
                        {q(idx("P'", j), c.dP[ju], Rel::ge), hc, e},
                        {dd_neg, lc, e}});
  }
  return witness(ju, {{q(idx("P'", j - 1), c.dP_at(j - 1), Rel::le), dd},
                      {q(idx("P'", j - 1), c.dP_at(j - 1), Rel::ge), hc},
                      {dd_neg, lc}});
}

CriterionVerdict b_min(const BdContext& c, CriterionId id) {
  const Builder q(id.direction);
  auto v = start(id, c.s.t);
  for (long j = 0; j <= static_cast<long>(c.n); ++j) v.indices.push_back(b_min_index(c, q, j));
  v.global.push_back(n_set(c));
  finish(v);
  return v;
}

CriterionVerdict e_min(const BdContext& c, CriterionId id) {
  const Builder q(id.direction);
  auto v = start(id, c.s.t);
  const auto n = static_cast<long>(c.n);
  std::vector<double> chi;
  if (!c.spec->b0_identically_zero()) {
    chi = aux_sequences(c.s).chi;
    for (double x : chi)
      if (!(x > 0.0)) throw FormMismatch("chi is not positive at t=" + format_number(c.s.t));
  }
  for (long j = 0; j <= n; ++j) {
    if (j == 0 || j == n) {
      v.indices.push_back(b_min_index(c, q, j));
      continue;
    }
    const auto ju = static_cast<std::size_t>(j);
    const Quantity ratio = chi.empty() ? qsqrt(c.a[ju - 1] / c.b[ju])
                                       : Quantity::exact(chi[ju] / chi[ju - 1]);
    const Quantity thr = ratio / c.o[ju];
    const Quantity ell = c.ell[ju];
    const Quantity h = c.dd[ju] - ell * c.d[ju];
    const Quantity l = c.dd[ju] + ell * (c.mu - c.d[ju]);
    v.indices.push_back(witness(
        ju, {{q(idx("P'", j - 1), c.dP[ju - 1], Rel::gt), q(idx("h", j), h, Rel::lt),
              q("(sqrt e_" + std::to_string(j) + ")' - r h_" + std::to_string(j), c.dsqrte[ju] - thr * h, Rel::lt)},
             {q(idx("P'", j - 1), c.dP[ju - 1], Rel::lt), q(idx("l", j), l, Rel::lt),
              q("(sqrt e_" + std::to_string(j) + ")' - r l_" + std::to_string(j), c.dsqrte[ju] - thr * l, Rel::lt)}}));
  }
  finish(v);
  return v;
}

CriterionVerdict magagna_a0(const BdContext& c, CriterionId id) {
  const Builder q(id.direction);
  auto v = start(id, c.s.t);
  for (std::size_t j = 0; j <= c.n; ++j) {
    const auto jl = static_cast<long>(j);
    v.indices.push_back(witness(j, {{q(idx("a'", jl), c.da[j], Rel::gt),
                                     q(idx("W", jl), c.W(j), Rel::eq, kEqualityTol)}}));
  }
  finish(v);
  return v;
}

CriterionVerdict magagna_a1(const BdContext& c, CriterionId id) {
  const Builder q(id.direction);
  auto v = start(id, c.s.t);
  v.indices.push_back(witness(0, {{q("a'_0", c.da[0], Rel::gt)}}));
  for (std::size_t j = 1; j <= c.n; ++j) {
    const auto jl = static_cast<long>(j);
    const Quantity cross = c.da[j - 1] * c.b[j] - c.a[j - 1] * c.db[j];
    v.indices.push_back(witness(j, {{q(idx("a'", jl), c.da[j], Rel::gt),
                                     q("a'_" + std::to_string(j - 1) + " b_" + std::to_string(j) + " - a_" +
                                           std::to_string(j - 1) + " b'_" + std::to_string(j),
                                       cross, Rel::eq, kEqualityTol)}}));
  }
  finish(v);
  return v;
}

using Dense = std::vector<std::vector<double>>;

Dense to_dense(const TriGeneral& m) {
  const std::size_t n = m.size();
  Dense out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    out[i][i] = m.diag[i];
    if (i + 1 < n) {
      out[i][i + 1] = m.sup[i];
      out[i + 1][i] = m.sub[i];
    }
  }
  return out;
}

Dense multiply(const Dense& x, const Dense& y) {
  const std::size_t n = x.size();
  Dense out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += x[i][k] * y[k][j];
  return out;
}

CommutationReport commutation(const BdContext& c) {
  CommutationReport r;
  const TriGeneral A = assemble_A(c.s);
  const TriGeneral Ap = assemble_A_prime(c.s);
  const Dense x = to_dense(A);
  const Dense y = to_dense(Ap);
  const Dense xy = multiply(x, y);
  const Dense yx = multiply(y, x);
  for (std::size_t i = 0; i < xy.size(); ++i)
    for (std::size_t j = 0; j < xy.size(); ++j)
      r.commutator = std::max(r.commutator, std::abs(yx[i][j] - xy[i][j]));
  r.commutator_scale = std::max(1.0, A.norm_inf() * Ap.norm_inf());
  r.commutes = r.commutator <= kCommuteTol * r.commutator_scale;

  r.lambda_prime = lambda_primes(c.s, compute_spectrum(assemble_S(c.s)));
  TriSym sym;
  sym.diag = Ap.diag;
  bool symmetrizable = true;
  for (std::size_t j = 0; j < c.n; ++j) {
    const double p = Ap.sup[j] * Ap.sub[j];
    if (!(p > 0.0)) symmetrizable = false;
    sym.off.push_back(std::sqrt(std::max(p, 0.0)));
  }
  if (!symmetrizable) {
    r.eig_gap = std::numeric_limits<double>::infinity();
    return r;
  }
  try {
    r.eig_a_prime = eigenvalues_bisect(sym);
  } catch (const DegenerateOffDiagonal&) {
    r.eig_gap = std::numeric_limits<double>::infinity();
    return r;
  }
  std::vector<double> sorted = r.lambda_prime;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    r.eig_gap = std::max(r.eig_gap, std::abs(sorted[k] - r.eig_a_prime[k]));
  r.eig_match = r.eig_gap <= kEigMatchTol;
  return r;
}

CriterionVerdict classify_bd(const BdContext& c, CriterionId id) {
  switch (id.criterion) {
    case Criterion::ismail_min: return ismail_min(c, id);
    case Criterion::ismail_max: return ismail_max(c, id);
    case Criterion::b_max: return b_max(c, id);
    case Criterion::btilde_max: return btilde_max(c, id);
    case Criterion::b_min: return b_min(c, id);
    case Criterion::e_min: return e_min(c, id);
    case Criterion::magagna_a0:
    case Criterion::magagna_a1: {
      auto v = id.criterion == Criterion::magagna_a0 ? magagna_a0(c, id) : magagna_a1(c, id);
      const CriterionId other{id.criterion == Criterion::magagna_a0 ? Criterion::magagna_a1
                                                                    : Criterion::magagna_a0,
                              id.direction};
      const bool both = v.member && (other.criterion == Criterion::magagna_a0 ? magagna_a0(c, other)
                                                                             : magagna_a1(c, other))
                                        .member;
      if (both) v.commutation = commutation(c);
      return v;
    }
    case Criterion::ismail_c_max:
    case Criterion::d_max: break;
  }
  throw InputError(criterion_tag(id) + " applies to random walks only");
}

CriterionVerdict classify_rw(const RwContext& r, CriterionId id) {
  const Builder q(id.direction);
  auto v = start(id, r.s.t);
  if (id.criterion == Criterion::ismail_c_max) {
    v.global.push_back(literal_flag("c_0 = 1 (literal)", r.rw->c0_identically_one()));
    for (std::size_t j = 1; j <= r.n; ++j)
      v.indices.push_back(witness(j, {{q(idx("c'", static_cast<long>(j)), r.dc[j], Rel::lt)}}));
  } else if (id.criterion == Criterion::d_max) {
    for (std::size_t j = 0; j < r.n; ++j)
      v.indices.push_back(witness(j, {{q(idx("delta'", static_cast<long>(j)), r.ddelta[j], Rel::gt)}}));
  } else {
    throw InputError(criterion_tag(id) + " applies to birth-death chains only");
  }
  finish(v);
  return v;
}

std::vector<CriterionVerdict> both(const BirthDeathSpec& spec, Criterion c, double t) {
  const auto ctx = make_context(spec, t);
  return {classify_bd(ctx, {c, Direction::up}), classify_bd(ctx, {c, Direction::down})};
}

std::vector<CriterionVerdict> both(const RandomWalkSpec& rw, Criterion c, double t) {
  const auto ctx = make_context(rw, t);
  return {classify_rw(ctx, {c, Direction::up}), classify_rw(ctx, {c, Direction::down})};
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  return out;
}

bool strip_suffix(std::string& s, std::string_view suffix) {
  if (s.size() < suffix.size() || s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0)
    return false;
  s.resize(s.size() - suffix.size());
  return true;
}

constexpr Criterion kAll[] = {Criterion::ismail_min, Criterion::ismail_max, Criterion::ismail_c_max,
                              Criterion::b_max,      Criterion::btilde_max, Criterion::b_min,
                              Criterion::e_min,      Criterion::magagna_a0, Criterion::magagna_a1,
                              Criterion::d_max};

std::vector<CriterionId> with_directions(bool random_walk) {
  std::vector<CriterionId> out;
  for (Criterion c : kAll) {
    if (applies_to_random_walk(c) != random_walk) continue;
    out.push_back({c, Direction::up});
    out.push_back({c, Direction::down});
  }
  return out;
}

double bisect(const std::function<bool(double)>& predicate, double inside, double outside, double width) {
  const auto safe = [&](double t) {
    try {
      return predicate(t);
    } catch (const Error&) {
      return false;
    }
  };
  while (std::abs(outside - inside) > width) {
    const double mid = 0.5 * (inside + outside);
    (safe(mid) ? inside : outside) = mid;
  }
  return 0.5 * (inside + outside);
}

std::vector<MonotoneInterval> tag(CriterionId id, const std::vector<std::pair<double, double>>& runs) {
  std::vector<MonotoneInterval> out;
  for (const auto& [lo, hi] : runs) out.push_back({id, lo, hi});
  return out;
}

void require_applicable(const Problem& problem, CriterionId id) {
  if (applies_to_random_walk(id.criterion) == problem.is_birth_death())
    throw InputError(criterion_tag(id) + " does not apply to a " +
                     (problem.is_birth_death() ? "birth-death chain" : "random walk"));
}

}  // namespace

Target criterion_target(Criterion c) {
  switch (c) {
    case Criterion::ismail_min:
    case Criterion::b_min:
    case Criterion::e_min: return Target::lambda_min;
    case Criterion::magagna_a0:
    case Criterion::magagna_a1: return Target::all;
    default: return Target::lambda_max;
  }
}

bool applies_to_random_walk(Criterion c) { return c == Criterion::ismail_c_max || c == Criterion::d_max; }

std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::ismail_min: return "ISMAIL_MIN";
    case Criterion::ismail_max: return "ISMAIL_MAX";
    case Criterion::ismail_c_max: return "ISMAIL_C_MAX";
    case Criterion::b_max: return "B_MAX";
    case Criterion::btilde_max: return "BTILDE_MAX";
    case Criterion::b_min: return "B_MIN";
    case Criterion::e_min: return "E_MIN";
    case Criterion::magagna_a0: return "MAGAGNA_A0";
    case Criterion::magagna_a1: return "MAGAGNA_A1";
    case Criterion::d_max: return "D_MAX";
  }
  return "?";
}

std::string_view direction_name(Direction d) { return d == Direction::up ? "increasing" : "decreasing"; }

std::string criterion_tag(CriterionId id) {
  return std::string(criterion_name(id.criterion)) + (id.direction == Direction::up ? "↑" : "↓");
}

std::optional<CriterionId> parse_criterion(std::string_view text) {
  std::string s = upper(text);
  Direction dir;
  if (strip_suffix(s, "↑") || strip_suffix(s, "_UP"))
    dir = Direction::up;
  else if (strip_suffix(s, "↓") || strip_suffix(s, "_DOWN") || strip_suffix(s, "_DN"))
    dir = Direction::down;
  else
    return std::nullopt;
  for (Criterion c : kAll)
    if (criterion_name(c) == s) return CriterionId{c, dir};
  return std::nullopt;
}

std::vector<CriterionId> birth_death_criteria() { return with_directions(false); }
std::vector<CriterionId> random_walk_criteria() { return with_directions(true); }

std::vector<CriterionId> applicable_criteria(const Problem& problem) {
  return problem.is_birth_death() ? birth_death_criteria() : random_walk_criteria();
}

std::string_view rel_symbol(Rel r) {
  switch (r) {
    case Rel::gt: return ">";
    case Rel::ge: return ">=";
    case Rel::lt: return "<";
    case Rel::le: return "<=";
    case Rel::ne: return "!=";
    case Rel::eq: return "==";
  }
  return "?";
}

Rel mirror(Rel r) {
  switch (r) {
    case Rel::gt: return Rel::lt;
    case Rel::ge: return Rel::le;
    case Rel::lt: return Rel::gt;
    case Rel::le: return Rel::ge;
    default: return r;
  }
}

bool CriterionVerdict::component(std::size_t j) const {
  for (const auto& w : indices)
    if (w.j == j) return w.disjunct != 0;
  throw InputError("index " + std::to_string(j) + " has no component in " + criterion_tag(id));
}

std::string CriterionVerdict::describe() const {
  std::ostringstream out;
  const auto show = [&](const Condition& c) {
    out << c.label << " = " << format_number(c.value) << ' ' << rel_symbol(c.rel) << " 0"
        << (c.holds ? "" : " (fails)");
  };
  out << criterion_tag(id) << " at t=" << format_number(t) << ": " << (member ? "member" : "not member")
      << '\n';
  for (const auto& w : indices) {
    out << "  j=" << w.j << ": ";
    if (w.disjunct != 0) {
      out << "case " << w.disjunct << " [";
      const auto& d = w.disjuncts[static_cast<std::size_t>(w.disjunct - 1)];
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) out << ", ";
        show(d[i]);
      }
      out << "]\n";
    } else {
      out << "no case holds";
      for (std::size_t k = 0; k < w.disjuncts.size(); ++k) {
        for (const auto& c : w.disjuncts[k]) {
          if (c.holds) continue;
          out << "; case " << k + 1 << ": ";
          show(c);
          break;
        }
      }
      out << '\n';
    }
  }
  for (const auto& c : global) {
    out << "  ";
    show(c);
    out << '\n';
  }
  if (commutation) {
    out << "  [A', A] residual " << format_number(commutation->commutator) << " (scale "
        << format_number(commutation->commutator_scale) << "), eig(A') vs lambda' gap "
        << format_number(commutation->eig_gap) << '\n';
  }
  return out.str();
}

CriterionVerdict classify(const BirthDeathSpec& spec, CriterionId id, double t) {
  return classify_bd(make_context(spec, t), id);
}

CriterionVerdict classify(const RandomWalkSpec& rw, CriterionId id, double t) {
  return classify_rw(make_context(rw, t), id);
}

CriterionVerdict classify(const Problem& problem, CriterionId id, double t) {
  return problem.is_birth_death() ? classify(problem.birth_death(), id, t)
                                  : classify(problem.random_walk(), id, t);
}

std::vector<CriterionVerdict> classify_all(const Problem& problem, const std::vector<CriterionId>& ids,
                                           double t) {
  std::vector<CriterionVerdict> out;
  if (problem.is_birth_death()) {
    const auto ctx = make_context(problem.birth_death(), t);
    for (const auto& id : ids) out.push_back(classify_bd(ctx, id));
  } else {
    const auto ctx = make_context(problem.random_walk(), t);
    for (const auto& id : ids) out.push_back(classify_rw(ctx, id));
  }
  return out;
}

std::vector<CriterionVerdict> classify_ismail(const BirthDeathSpec& spec, double t) {
  const auto ctx = make_context(spec, t);
  return {classify_bd(ctx, {Criterion::ismail_min, Direction::up}),
          classify_bd(ctx, {Criterion::ismail_min, Direction::down}),
          classify_bd(ctx, {Criterion::ismail_max, Direction::up}),
          classify_bd(ctx, {Criterion::ismail_max, Direction::down})};
}

std::vector<CriterionVerdict> classify_ismail(const RandomWalkSpec& rw, double t) {
  return both(rw, Criterion::ismail_c_max, t);
}

std::vector<CriterionVerdict> classify_B_max(const BirthDeathSpec& spec, double t) {
  return both(spec, Criterion::b_max, t);
}

std::vector<CriterionVerdict> classify_Btilde_max(const BirthDeathSpec& spec, double t) {
  return both(spec, Criterion::btilde_max, t);
}

std::vector<CriterionVerdict> classify_B_min(const BirthDeathSpec& spec, double t) {
  return both(spec, Criterion::b_min, t);
}

std::vector<CriterionVerdict> classify_E_min(const BirthDeathSpec& spec, double t) {
  return both(spec, Criterion::e_min, t);
}

std::vector<CriterionVerdict> classify_magagna(const BirthDeathSpec& spec, double t) {
  const auto ctx = make_context(spec, t);
  return {classify_bd(ctx, {Criterion::magagna_a0, Direction::up}),
          classify_bd(ctx, {Criterion::magagna_a0, Direction::down}),
          classify_bd(ctx, {Criterion::magagna_a1, Direction::up}),
          classify_bd(ctx, {Criterion::magagna_a1, Direction::down})};
}

std::vector<CriterionVerdict> classify_D_max(const RandomWalkSpec& rw, double t) {
  return both(rw, Criterion::d_max, t);
}

std::vector<std::pair<double, double>> scan_predicate(const Interval& domain, std::size_t grid,
                                                      const std::function<bool(double)>& predicate,
                                                      const ScanOptions& options) {
  if (grid < 2) throw InputError("grid must have at least 2 points");
  if (!(options.refine_width > 0.0)) throw InputError("refinement width must be positive");
  const auto member = parallel_map<char>(
      grid, [&](std::size_t i) { return static_cast<char>(predicate(domain.grid_point(i, grid))); },
      options.threads);

  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < grid;) {
    if (!member[i]) {
      ++i;
      continue;
    }
    std::size_t k = i;
    while (k + 1 < grid && member[k + 1]) ++k;
    if (k > i) runs.emplace_back(i, k);
    i = k + 1;
  }

  const auto refined = parallel_map<std::pair<double, double>>(
      runs.size(),
      [&](std::size_t r) {
        const auto [first, last] = runs[r];
        const double lo = first == 0 ? domain.lo
                                     : bisect(predicate, domain.grid_point(first, grid),
                                              domain.grid_point(first - 1, grid), options.refine_width);
        const double hi = last + 1 == grid ? domain.hi
                                           : bisect(predicate, domain.grid_point(last, grid),
                                                    domain.grid_point(last + 1, grid), options.refine_width);
        return std::pair{lo, hi};
      },
      options.threads);
  return refined;
}

std::vector<MonotoneInterval> scan(const Problem& problem, CriterionId id, std::size_t grid,
                                   const ScanOptions& options) {
  require_applicable(problem, id);
  return tag(id, scan_predicate(
                     problem.domain(), grid, [&](double t) { return classify(problem, id, t).member; },
                     options));
}

std::vector<MonotoneInterval> scan(const BirthDeathSpec& spec, CriterionId id, std::size_t grid,
                                   const ScanOptions& options) {
  return scan(Problem{spec}, id, grid, options);
}

std::vector<MonotoneInterval> scan(const RandomWalkSpec& rw, CriterionId id, std::size_t grid,
                                   const ScanOptions& options) {
  return scan(Problem{rw}, id, grid, options);
}

std::vector<std::pair<double, double>> scan_component(const Problem& problem, CriterionId id,
                                                      std::size_t j, std::size_t grid,
                                                      const ScanOptions& options) {
  require_applicable(problem, id);
  return scan_predicate(
      problem.domain(), grid, [&](double t) { return classify(problem, id, t).component(j); }, options);
}

std::vector<double> governed_derivatives(const Problem& problem, Criterion c, double t) {
  std::vector<double> all;
  if (problem.is_birth_death()) {
    const auto s = sample(problem.birth_death(), t);
    all = lambda_primes(s, compute_spectrum(assemble_S(s)));
  } else {
    const auto hat = rw_to_bd_hat(problem.random_walk());
    const auto s = sample(hat, t);
    const auto spectrum = compute_spectrum(assemble_S(s));
    return {lambda_prime(s, spectrum, spectrum.size() - 1).total};
  }
  switch (criterion_target(c)) {
    case Target::lambda_min: return {all.front()};
    case Target::lambda_max: return {all.back()};
    case Target::all: break;
  }
  return all;
}

}  // namespace bdspectra
