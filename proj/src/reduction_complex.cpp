// Circuits of vector configurations, metric cones, reduction closures and the
// complex of relatively open cones on which a basis is norm-reducing. The
// extreme-ray computation is an exact double-description sweep with a
// simplicial start and combinatorial adjacency.
#include "msmb/reduction_complex.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <utility>

#include "msmb/bases.hpp"
#include "msmb/error.hpp"
#include "msmb/lattice.hpp"
#include "msmb/linalg.hpp"
#include "msmb/vec.hpp"

namespace msmb {

namespace {

constexpr std::size_t kRayGrowthCap = 65536;  // intermediate ray count limit

Int dot(const IntVector& a, const IntVector& b) {
  assert(a.size() == b.size());
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// a*u + b*v componentwise.
IntVector combine(const Int& a, const IntVector& u, const Int& b, const IntVector& v) {
  assert(u.size() == v.size());
  IntVector r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = a * u[i] + b * v[i];
  return r;
}

// Exponent notation over 1-based positions: each factor renders its position,
// then ^k when the exponent k exceeds 1. Positions of two or more digits are
// separated by dots to stay readable.
std::string exponent_name(std::vector<std::pair<int, Int>> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  bool wide = false;
  for (const auto& [idx, exp] : factors) wide = wide || idx + 1 >= 10;
  std::string out;
  for (const auto& [idx, exp] : factors) {
    if (!out.empty() && wide) out += '.';
    out += std::to_string(idx + 1);
    if (exp > 1) out += "^" + exp.get_str();
  }
  return out;
}

void check_configuration(const std::vector<IntVector>& vecs) {
  if (vecs.empty())
    throw Error(ErrorKind::InvalidInput, "the vector configuration is empty");
  for (const auto& v : vecs) {
    if (v.size() != vecs.front().size())
      throw Error(ErrorKind::InvalidInput, "the configuration mixes vector lengths");
    if (is_zero(v))
      throw Error(ErrorKind::InvalidInput, "the configuration contains a zero vector");
  }
  if (static_cast<int>(vecs.size()) > kMatroidMaxElements)
    throw Error(ErrorKind::GuardExceeded,
                "the configuration has " + std::to_string(vecs.size()) +
                    " vectors; the circuit scan handles at most " +
                    std::to_string(kMatroidMaxElements));
}

// Index of the listed move that v is a nonzero integer multiple of, or -1.
// The list must be lexicographically sorted canonical primitive moves.
int find_multiple(const std::vector<IntVector>& ground, const IntVector& v) {
  const IntVector p = canonical(primitive(v));
  auto it = std::lower_bound(ground.begin(), ground.end(), p, lex_less);
  if (it != ground.end() && *it == p) return static_cast<int>(it - ground.begin());
  return -1;
}

// Shared validation for the reduction operations.
void check_reduction_inputs(const MoveSet& basis, const MoveSet& all, const Int& coeff_bound) {
  if (!(basis.ambient() == all.ambient()))
    throw Error(ErrorKind::InvalidInput, "the move sets have different ambient matrices");
  if (basis.empty())
    throw Error(ErrorKind::InvalidInput, "the basis is empty");
  if (coeff_bound < 1)
    throw Error(ErrorKind::InvalidInput, "the coefficient bound must be at least 1");
  for (const auto& m : all.moves())
    if (content(m) != 1)
      throw Error(ErrorKind::InvalidInput,
                  "reduction scans need primitive moves; " + to_string(m) + " is not");
  for (const auto& b : basis.moves())
    if (!all.contains(b))
      throw Error(ErrorKind::InvalidInput,
                  "the basis move " + to_string(b) + " is missing from the move set");
  const MarkovCheck mk = verify_markov(basis.ambient(), basis);
  if (!mk.ok)
    throw Error(ErrorKind::InvalidInput, "the moves do not form a Markov basis");
}

// Enumerates multiplier vectors alpha over the basis moves with every entry
// in [-bound, bound], the first nonzero entry positive (relations are
// identified with their negatives) and a nonzero combination. Calls
// f(alpha, value) with value = sum alpha[i] * basis[i].
template <typename F>
void for_each_combination(const std::vector<IntVector>& basis, const Int& bound, F&& f) {
  if (!fits_ll(bound))
    throw Error(ErrorKind::BoundTooLarge, "the coefficient bound does not fit a machine word");
  const long long width = 2 * bound.get_si() + 1;
  long long combos = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    combos *= width;
    if (combos > search_budget())
      throw Error(ErrorKind::BudgetExceeded, "the relation scan exceeds the search budget");
  }
  std::vector<Int> alpha(basis.size(), Int(-bound));
  const std::size_t n = basis.front().size();
  while (true) {
    int first = 0;
    while (first < static_cast<int>(alpha.size()) && alpha[first] == 0) ++first;
    if (first < static_cast<int>(alpha.size()) && alpha[first] > 0) {
      IntVector value(n, Int(0));
      for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] != 0)
          for (std::size_t j = 0; j < n; ++j) value[j] += alpha[i] * basis[i][j];
      if (!is_zero(value)) f(alpha, value);
    }
    std::size_t pos = 0;
    while (pos < alpha.size() && alpha[pos] == bound) alpha[pos++] = -bound;
    if (pos == alpha.size()) break;
    alpha[pos] += 1;
  }
}

// gcd of the multipliers and the target coefficient: 1 exactly when the
// relation is primitive.
Int relation_content(const std::vector<Int>& alpha, const Int& target_coeff) {
  Int g = abs(target_coeff);
  for (const auto& a : alpha) g = gcd(g, abs(a));
  return g;
}

std::string render_rows(const std::vector<Inequality>& rows) {
  std::string key;
  for (const auto& q : rows) key += to_string(q.coeffs) + (q.strict ? "<" : "=") + ";";
  return key;
}

std::string render_rays(const std::vector<IntVector>& rays) {
  std::string key;
  for (const auto& r : rays) key += to_string(r) + ";";
  return key;
}

Cone make_cone(IneqSystem sys) {
  Cone cone;
  cone.rays = extreme_rays(sys);
  cone.sys = std::move(sys);
  cone.interior = IntVector(static_cast<std::size_t>(cone.sys.dim()), Int(0));
  for (const auto& r : cone.rays) cone.interior = add(cone.interior, r);
  return cone;
}

bool cone_order(const Cone& a, const Cone& b) {
  if (a.rays.size() != b.rays.size()) return a.rays.size() < b.rays.size();
  return std::lexicographical_compare(a.rays.begin(), a.rays.end(), b.rays.begin(), b.rays.end(),
                                      lex_less);
}

}  // namespace

bool satisfies(const IneqSystem& sys, const IntVector& point) {
  if (static_cast<int>(point.size()) != sys.dim())
    throw Error(ErrorKind::InvalidInput, "the point does not match the system's variables");
  for (const auto& row : sys.rows) {
    const Int v = dot(row.coeffs, point);
    if (row.strict ? v >= 0 : v > 0) return false;
  }
  return true;
}

std::vector<MatroidCircuit> matroid_circuits_with_coeffs(const std::vector<IntVector>& vecs) {
  check_configuration(vecs);
  std::vector<MatroidCircuit> out;
  for (const auto& dep : support_minimal_dependencies(vecs)) {
    MatroidCircuit c;
    c.support = dep.support;
    c.coeffs = dep.coeffs;
    std::vector<std::pair<int, Int>> factors;
    for (std::size_t i = 0; i < c.support.size(); ++i)
      factors.emplace_back(c.support[i], abs(c.coeffs[i]));
    c.name = exponent_name(std::move(factors));
    out.push_back(std::move(c));
  }
  return out;
}

Cone metric_cone(const std::vector<IntVector>& vecs) {
  const auto circuits = matroid_circuits_with_coeffs(vecs);
  const int k = static_cast<int>(vecs.size());
  IneqSystem sys;
  for (const auto& v : vecs) sys.labels.push_back(to_string(v));
  for (const auto& c : circuits) {
    for (std::size_t i = 0; i < c.support.size(); ++i) {
      Inequality q;
      q.coeffs = IntVector(static_cast<std::size_t>(k), Int(0));
      // |c_i| n_i <= sum_{j != i} |c_j| n_j, stored as coeffs·n <= 0.
      for (std::size_t j = 0; j < c.support.size(); ++j) {
        Int w = abs(c.coeffs[j]);
        if (i != j) w = -w;
        q.coeffs[static_cast<std::size_t>(c.support[j])] = w;
      }
      q.strict = false;
      q.origin = "triangle " + c.name;
      sys.rows.push_back(std::move(q));
    }
  }
  for (int i = 0; i < k; ++i) {
    Inequality q;
    q.coeffs = IntVector(static_cast<std::size_t>(k), Int(0));
    q.coeffs[static_cast<std::size_t>(i)] = -1;  // n_i > 0, stored as -n_i < 0
    q.strict = true;
    q.origin = "positivity " + std::to_string(i + 1);
    sys.rows.push_back(std::move(q));
  }
  Cone cone = make_cone(std::move(sys));
  // The assignment n_i = |v_i| (any norm of the vectors) satisfies every row
  // strictly, so the cone always has a strictly positive interior point.
  assert(!cone.rays.empty());
  assert(satisfies(cone.sys, cone.interior));
  return cone;
}

std::vector<IntVector> extreme_rays(const IneqSystem& sys) {
  const int k = sys.dim();
  if (k < 1 || k > kRayMaxVars)
    throw Error(ErrorKind::DimensionGuard,
                "extreme rays need between 1 and " + std::to_string(kRayMaxVars) + " variables");
  if (static_cast<int>(sys.rows.size()) > kRayMaxRows)
    throw Error(ErrorKind::DimensionGuard,
                "extreme rays handle at most " + std::to_string(kRayMaxRows) + " inequalities");

  std::vector<IntVector> rows;          // closures: coeffs . x <= 0
  std::vector<IntVector> strict_rows;
  for (const auto& q : sys.rows) {
    if (static_cast<int>(q.coeffs.size()) != k)
      throw Error(ErrorKind::InvalidInput, "an inequality does not match the system's variables");
    if (is_zero(q.coeffs)) {
      if (q.strict) return {};  // 0 < 0 never holds
      continue;                 // 0 <= 0 always holds
    }
    rows.push_back(q.coeffs);
    if (q.strict) strict_rows.push_back(q.coeffs);
  }
  if (rank_rational(rows) < k)
    throw Error(ErrorKind::Unsupported,
                "the closure contains a line; extreme rays are not defined");

  // Simplicial start: k independent rows, rays from the adjugate.
  std::vector<int> chosen;
  {
    IntMatrix acc;
    for (std::size_t i = 0; i < rows.size() && static_cast<int>(chosen.size()) < k; ++i) {
      acc.push_back(rows[i]);
      if (rank_rational(acc) == static_cast<int>(chosen.size()) + 1)
        chosen.push_back(static_cast<int>(i));
      else
        acc.pop_back();
    }
    assert(static_cast<int>(chosen.size()) == k);
  }
  IntMatrix m0;
  for (int idx : chosen) m0.push_back(rows[static_cast<std::size_t>(idx)]);
  Int det;
  const IntMatrix adj = adjugate(m0, det);
  const int flip = -sgn(det);
  std::vector<IntVector> rays;
  for (int j = 0; j < k; ++j) {
    IntVector r(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      r[static_cast<std::size_t>(i)] = flip * adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    rays.push_back(primitive(r));
  }

  // Insert the remaining rows one at a time. `processed` indexes the rows the
  // current ray set already respects; adjacency of two rays is the standard
  // combinatorial test over the processed rows.
  std::vector<int> processed = chosen;
  const std::set<int> start(chosen.begin(), chosen.end());
  auto zero_set = [&](const IntVector& r) {
    std::vector<char> z(processed.size());
    for (std::size_t t = 0; t < processed.size(); ++t)
      z[t] = sgn(dot(rows[static_cast<std::size_t>(processed[t])], r)) == 0;
    return z;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (start.count(static_cast<int>(i))) continue;
    const IntVector& h = rows[i];
    std::vector<Int> vals;
    vals.reserve(rays.size());
    bool any_positive = false;
    for (const auto& r : rays) {
      vals.push_back(dot(h, r));
      any_positive = any_positive || vals.back() > 0;
    }
    if (!any_positive) {
      processed.push_back(static_cast<int>(i));
      continue;
    }
    std::vector<std::vector<char>> zsets;
    zsets.reserve(rays.size());
    for (const auto& r : rays) zsets.push_back(zero_set(r));
    auto adjacent = [&](std::size_t a, std::size_t b) {
      std::vector<char> both(processed.size());
      for (std::size_t t = 0; t < processed.size(); ++t) both[t] = zsets[a][t] && zsets[b][t];
      for (std::size_t w = 0; w < rays.size(); ++w) {
        if (w == a || w == b) continue;
        bool covers = true;
        for (std::size_t t = 0; t < processed.size() && covers; ++t)
          covers = !both[t] || zsets[w][t];
        if (covers) return false;
      }
      return true;
    };
    std::vector<IntVector> next;
    for (std::size_t a = 0; a < rays.size(); ++a)
      if (vals[a] <= 0) next.push_back(rays[a]);
    for (std::size_t a = 0; a < rays.size(); ++a) {
      if (vals[a] >= 0) continue;  // negative side
      for (std::size_t b = 0; b < rays.size(); ++b) {
        if (vals[b] <= 0) continue;  // positive side
        if (!adjacent(a, b)) continue;
        IntVector w = primitive(combine(vals[b], rays[a], -vals[a], rays[b]));
        assert(!is_zero(w));
        if (std::find(next.begin(), next.end(), w) == next.end()) next.push_back(std::move(w));
      }
    }
    rays = std::move(next);
    if (rays.size() > kRayGrowthCap)
      throw Error(ErrorKind::BudgetExceeded, "the double description grew past its cap");
    processed.push_back(static_cast<int>(i));
  }

  std::sort(rays.begin(), rays.end(), lex_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  for (const auto& r : rays) {
    IntMatrix tight;
    for (const auto& row : rows) {
      const Int v = dot(row, r);
      assert(v <= 0);
      if (v == 0) tight.push_back(row);
    }
    assert(rank_rational(tight) == k - 1);
    (void)tight;
  }

  if (!strict_rows.empty()) {
    IntVector w(static_cast<std::size_t>(k), Int(0));
    for (const auto& r : rays) w = add(w, r);
    for (const auto& h : strict_rows)
      if (dot(h, w) >= 0) return {};  // the relatively open cone is empty
  }
  return rays;
}

MoveSet b_reduction_closure(const MoveSet& basis, const MoveSet& start, const Int& coeff_bound) {
  check_reduction_inputs(basis, start, coeff_bound);
  std::vector<IntVector> ground = start.moves();
  const std::vector<IntVector>& b = basis.moves();
  int additions = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for_each_combination(b, coeff_bound, [&](const std::vector<Int>& alpha, const IntVector& value) {
      if (find_multiple(ground, value) < 0) return;  // not a relation over the listed moves
      const Int target_coeff = content(value);
      if (target_coeff > coeff_bound) return;
      if (relation_content(alpha, target_coeff) != 1) return;
      for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] == 0) continue;
        const int sigma = sgn(alpha[j]);
        IntVector reduced(value.size());
        for (std::size_t t = 0; t < value.size(); ++t) reduced[t] = sigma * value[t] - b[j][t];
        if (is_zero(reduced)) continue;
        if (find_multiple(ground, reduced) >= 0) continue;
        const IntVector fresh = canonical(primitive(reduced));
        ground.insert(std::lower_bound(ground.begin(), ground.end(), fresh, lex_less), fresh);
        changed = true;
        if (++additions > kClosureMaxAdditions)
          throw Error(ErrorKind::NonConvergence,
                      "the reduction closure added more than " +
                          std::to_string(kClosureMaxAdditions) + " moves");
      }
    });
  }
  return MoveSet::of(basis.ambient(), std::move(ground), MoveKind::custom);
}

std::vector<RelationSystem> reduction_inequality_sets(const MoveSet& basis, const MoveSet& all,
                                                      const Int& coeff_bound,
                                                      bool weak_projection) {
  check_reduction_inputs(basis, all, coeff_bound);
  const std::vector<IntVector>& ground = all.moves();
  const std::vector<IntVector>& b = basis.moves();
  std::vector<int> base_at(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    base_at[j] = find_multiple(ground, b[j]);
    assert(base_at[j] >= 0);
  }
  const std::size_t dim = ground.size();

  std::vector<RelationSystem> out;
  for_each_combination(b, coeff_bound, [&](const std::vector<Int>& alpha, const IntVector& value) {
    const int target = find_multiple(ground, value);
    if (target < 0) return;
    const Int mag = content(value);
    if (mag > coeff_bound) return;
    if (relation_content(alpha, mag) != 1) return;

    RelationSystem rs;
    rs.relation.multipliers = alpha;
    rs.relation.target = target;
    rs.relation.target_coeff = primitive(value) == ground[static_cast<std::size_t>(target)] ? mag : -mag;
    std::vector<std::pair<int, Int>> factors;
    for (std::size_t j = 0; j < alpha.size(); ++j)
      if (alpha[j] != 0) factors.emplace_back(base_at[j], abs(alpha[j]));
    factors.emplace_back(target, mag);
    rs.relation.name = exponent_name(std::move(factors));

    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0) continue;
      const int sigma = sgn(alpha[j]);
      IntVector reduced(value.size());
      for (std::size_t t = 0; t < value.size(); ++t) reduced[t] = sigma * value[t] - b[j][t];
      if (is_zero(reduced)) continue;
      const int landed = find_multiple(ground, reduced);
      ReductionOption option;
      option.reducer = static_cast<int>(j);
      if (landed >= 0) {
        // The shortened element is content(reduced) copies of ground[landed];
        // reduction shrinks the weighted norm exactly when the target's
        // weight exceeds the substitute's: mag·n_target > content·n_landed,
        // stored as content·n_landed - mag·n_target < 0.
        Inequality q;
        q.coeffs = IntVector(dim, Int(0));
        q.coeffs[static_cast<std::size_t>(landed)] += content(reduced);
        q.coeffs[static_cast<std::size_t>(target)] -= mag;
        q.strict = true;
        q.origin = "relation " + rs.relation.name + " reduce by " + std::to_string(base_at[j] + 1);
        option.ineqs.push_back(std::move(q));
      } else if (weak_projection) {
        // The shortened combination sum gamma_i b_i hits no listed move;
        // bound its norm from below by each reverse-triangle estimate.
        std::vector<Int> gamma(alpha.size());
        for (std::size_t t = 0; t < alpha.size(); ++t)
          gamma[t] = sigma * alpha[t] - (t == j ? 1 : 0);
        // Necessary conditions: mag·n_target > |gamma_i| n_i - sum_{t != i}
        // |gamma_t| n_t for every pivot i, each stored as coeffs·n < 0.
        for (std::size_t i = 0; i < gamma.size(); ++i) {
          if (gamma[i] == 0) continue;
          Inequality q;
          q.coeffs = IntVector(dim, Int(0));
          for (std::size_t t = 0; t < gamma.size(); ++t) {
            if (gamma[t] == 0) continue;
            Int w = abs(gamma[t]);
            if (t != i) w = -w;
            q.coeffs[static_cast<std::size_t>(base_at[t])] += w;
          }
          q.coeffs[static_cast<std::size_t>(target)] -= mag;
          q.strict = true;
          q.origin = "relation " + rs.relation.name + " reduce by " +
                     std::to_string(base_at[j] + 1) + " (projected)";
          option.ineqs.push_back(std::move(q));
        }
      } else {
        throw Error(ErrorKind::InvalidInput,
                    "the move set is not closed under basis reductions at bound " +
                        coeff_bound.get_str() + ": relation " + rs.relation.name +
                        " shortens to the unlisted " + to_string(canonical(primitive(reduced))));
      }
      if (!option.ineqs.empty()) rs.options.push_back(std::move(option));
    }
    if (!rs.options.empty()) out.push_back(std::move(rs));
  });

  std::sort(out.begin(), out.end(), [](const RelationSystem& x, const RelationSystem& y) {
    if (x.relation.target != y.relation.target) return x.relation.target < y.relation.target;
    return std::lexicographical_compare(x.relation.multipliers.begin(), x.relation.multipliers.end(),
                                        y.relation.multipliers.begin(), y.relation.multipliers.end());
  });
  return out;
}

ReductionComplex distance_reducing_complex(const MoveSet& basis, const MoveSet& all,
                                           const Int& coeff_bound, bool pairwise_overlaps) {
  std::vector<RelationSystem> relations = reduction_inequality_sets(basis, all, coeff_bound);
  Cone metric = metric_cone(all.moves());

  long long transversals = 1;
  for (const auto& rs : relations) {
    transversals *= static_cast<long long>(rs.options.size());
    if (transversals > kTransversalCap)
      throw Error(ErrorKind::GuardExceeded, "too many transversals of the reduction options");
  }

  ReductionComplex out;
  out.ground = all.moves();
  out.coeff_bound = coeff_bound;
  out.metric = metric;
  out.relations = relations;

  std::set<std::string> seen_choices;
  std::map<std::string, Cone> cells;
  std::vector<std::size_t> pick(relations.size(), 0);
  while (true) {
    std::vector<Inequality> chosen;
    for (std::size_t i = 0; i < relations.size(); ++i)
      for (const auto& q : relations[i].options[pick[i]].ineqs)
        if (std::find(chosen.begin(), chosen.end(), q) == chosen.end()) chosen.push_back(q);
    std::sort(chosen.begin(), chosen.end(), [](const Inequality& a, const Inequality& b) {
      if (a.coeffs != b.coeffs) return lex_less(a.coeffs, b.coeffs);
      return a.strict < b.strict;
    });
    if (seen_choices.insert(render_rows(chosen)).second) {
      IneqSystem sys;
      sys.labels = metric.sys.labels;
      sys.rows = metric.sys.rows;
      for (auto& q : chosen) sys.rows.push_back(std::move(q));
      Cone cone = make_cone(std::move(sys));
      if (!cone.rays.empty()) cells.emplace(render_rays(cone.rays), std::move(cone));
    }
    std::size_t pos = 0;
    while (pos < pick.size() && pick[pos] + 1 == relations[pos].options.size()) pick[pos++] = 0;
    if (pos == pick.size()) break;  // when no relation constrains the norm,
    ++pick[pos];                    // the single pass kept the metric cone
  }
  for (auto& kv : cells) out.cells.push_back(std::move(kv.second));
  std::sort(out.cells.begin(), out.cells.end(), cone_order);

  if (pairwise_overlaps) {
    std::map<std::string, Cone> overlaps;
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
      for (std::size_t j = i + 1; j < out.cells.size(); ++j) {
        IneqSystem sys;
        sys.labels = metric.sys.labels;
        sys.rows = out.cells[i].sys.rows;
        for (const auto& q : out.cells[j].sys.rows)
          if (std::find(sys.rows.begin(), sys.rows.end(), q) == sys.rows.end()) sys.rows.push_back(q);
        Cone cone = make_cone(std::move(sys));
        if (!cone.rays.empty()) overlaps.emplace(render_rays(cone.rays), std::move(cone));
      }
    }
    for (auto& kv : overlaps) out.overlaps.push_back(std::move(kv.second));
    std::sort(out.overlaps.begin(), out.overlaps.end(), cone_order);
  }
  return out;
}

}  // namespace msmb
