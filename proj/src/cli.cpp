#include "msmb/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "msmb/bases.hpp"
#include "msmb/curves.hpp"
#include "msmb/distance.hpp"
#include "msmb/error.hpp"
#include "msmb/matrix.hpp"
#include "msmb/moveset.hpp"
#include "msmb/reduction_complex.hpp"
#include "msmb/reference.hpp"
#include "msmb/vec.hpp"

namespace msmb {
namespace {

using njson = nlohmann::ordered_json;

bool integer_token(const std::string& t) {
  std::size_t i = (t[0] == '-') ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return true;
}

njson int_json(const Int& z) {
  if (fits_ll(z)) return njson(static_cast<long long>(z.get_si()));
  return njson(z.get_str());
}

njson vec_json(const IntVector& v) {
  njson a = njson::array();
  for (const Int& z : v) a.push_back(int_json(z));
  return a;
}

njson rows_json(const std::vector<IntVector>& vs) {
  njson a = njson::array();
  for (const IntVector& v : vs) a.push_back(vec_json(v));
  return a;
}

njson ineq_json(const Inequality& q) {
  njson j;
  j["coeffs"] = vec_json(q.coeffs);
  j["rel"] = q.strict ? "<" : "<=";
  j["origin"] = q.origin;
  return j;
}

njson cone_json(const Cone& c) {
  njson j;
  njson iq = njson::array();
  for (const Inequality& q : c.sys.rows) iq.push_back(ineq_json(q));
  j["inequalities"] = iq;
  j["rays"] = rows_json(c.rays);
  j["interior"] = vec_json(c.interior);
  return j;
}

// One linear inequality over variables n1..nk, read off the stored
// coeffs·n <= 0 form: positive terms on the left, negated terms on the
// right, e.g. "n2 < n4" or "n1 <= 2n3 + n5".
std::string render_ineq(const Inequality& q) {
  std::string lhs, rhs;
  for (std::size_t i = 0; i < q.coeffs.size(); ++i) {
    const Int& c = q.coeffs[i];
    if (c == 0) continue;
    Int a = abs(c);
    std::string term = (a == 1 ? std::string() : a.get_str()) + "n" + std::to_string(i + 1);
    std::string& side = (c > 0) ? lhs : rhs;
    if (!side.empty()) side += " + ";
    side += term;
  }
  if (lhs.empty()) lhs = "0";
  if (rhs.empty()) rhs = "0";
  return lhs + (q.strict ? " < " : " <= ") + rhs;
}

void print_moves(std::ostream& out, const std::vector<IntVector>& vs) {
  for (const IntVector& v : vs) out << to_string(v) << "\n";
}

const SemigroupMatrix& need_matrix(const JobConfig& cfg) {
  if (!cfg.matrix) throw Error(ErrorKind::InvalidInput, "--matrix is required for this command");
  return *cfg.matrix;
}

MoveSet need_basis(const JobConfig& cfg, const SemigroupMatrix& A) {
  if (!cfg.basis) throw Error(ErrorKind::InvalidInput, "--basis is required for this command");
  return MoveSet::of(A, *cfg.basis, MoveKind::markov);
}

njson envelope(const std::string& command, const JobConfig& cfg) {
  njson j;
  j["schema"] = 1;
  j["command"] = command;
  if (cfg.matrix) j["matrix"] = rows_json(cfg.matrix->entries());
  if (cfg.basis) j["basis"] = rows_json(*cfg.basis);
  if (cfg.seed != 0) j["seed"] = cfg.seed;
  return j;
}

void emit(std::ostream& out, const njson& j) { out << j.dump(2) << "\n"; }

int cmd_move_listing(const std::string& command, const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  MoveSet m = command == "circuits"         ? circuits(A)
              : command == "graver"         ? graver(A)
              : command == "indispensables" ? indispensables(A)
                                            : universal_markov(A);
  if (cfg.format == "json") {
    njson j = envelope(command, cfg);
    j["count"] = m.moves().size();
    j["moves"] = rows_json(m.moves());
    emit(out, j);
    return 0;
  }
  const char* noun = command == "circuits"         ? " circuits"
                     : command == "graver"         ? " Graver moves"
                     : command == "indispensables" ? " indispensable moves"
                                                   : " moves in the universal Markov basis";
  out << m.moves().size() << noun << "\n";
  print_moves(out, m.moves());
  return 0;
}

int cmd_markov_min(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  auto bases = minimal_markov_bases(A);
  if (cfg.format == "json") {
    njson j = envelope("markov-min", cfg);
    j["count"] = bases.size();
    njson bs = njson::array();
    for (const MoveSet& b : bases) bs.push_back(rows_json(b.moves()));
    j["bases"] = bs;
    emit(out, j);
    return 0;
  }
  out << bases.size() << " minimal Markov bases\n";
  for (std::size_t i = 0; i < bases.size(); ++i) {
    out << "basis " << (i + 1) << ":\n";
    print_moves(out, bases[i].moves());
  }
  return 0;
}

int cmd_verify_markov(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  MoveSet B = need_basis(cfg, A);
  MarkovCheck mc = verify_markov(A, B);
  bool exhaustive = cfg.kernel_ball > 0;
  MarkovCheck ex;
  if (exhaustive) ex = verify_markov_exhaustive(A, B, cfg.kernel_ball);
  if (cfg.format == "json") {
    njson j = envelope("verify-markov", cfg);
    j["ok"] = mc.ok;
    if (!mc.ok) {
      j["witness_target"] = vec_json(mc.witness_target);
      j["witness_from"] = vec_json(mc.witness_from);
      j["witness_to"] = vec_json(mc.witness_to);
    }
    if (exhaustive) {
      njson e;
      e["bound"] = int_json(cfg.kernel_ball);
      e["ok"] = ex.ok;
      if (!ex.ok) {
        e["witness_target"] = vec_json(ex.witness_target);
        e["witness_from"] = vec_json(ex.witness_from);
        e["witness_to"] = vec_json(ex.witness_to);
      }
      j["exhaustive"] = e;
    }
    emit(out, j);
    return 0;
  }
  if (mc.ok)
    out << "Markov basis: yes\n";
  else
    out << "Markov basis: NO (fiber of " << to_string(mc.witness_target) << " disconnects "
        << to_string(mc.witness_from) << " and " << to_string(mc.witness_to) << ")\n";
  if (exhaustive) {
    if (ex.ok)
      out << "exhaustive up to norm " << cfg.kernel_ball.get_str() << ": yes\n";
    else
      out << "exhaustive up to norm " << cfg.kernel_ball.get_str() << ": NO (fiber of "
          << to_string(ex.witness_target) << " disconnects " << to_string(ex.witness_from)
          << " and " << to_string(ex.witness_to) << ")\n";
  }
  return 0;
}

int cmd_check_reducing(const std::string& command, const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  MoveSet B = need_basis(cfg, A);
  bool strong = command == "check-strong";
  ReducingCheck rc = strong ? is_strongly_distance_reducing(A, B) : is_distance_reducing(A, B);
  const char* adjective = strong ? "strongly distance reducing" : "distance reducing";
  if (cfg.format == "json") {
    njson j = envelope(command, cfg);
    j["reducing"] = rc.ok;
    if (!rc.ok) j["witness"] = vec_json(rc.witness);
    emit(out, j);
  } else if (rc.ok) {
    out << adjective << "\n";
  } else {
    out << "NOT " << adjective << " (unreduced kernel element " << to_string(rc.witness)
        << ")\n";
  }
  return (!rc.ok && cfg.strict) ? 1 : 0;
}

int cmd_check_circuits(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  MoveSet B = need_basis(cfg, A);
  CircuitCheck cc = check_reduces_circuits(A, B);
  if (cfg.format == "json") {
    njson j = envelope("check-circuits", cfg);
    j["ok"] = cc.ok;
    if (!cc.ok) j["failing_circuit"] = vec_json(cc.failing_circuit);
    emit(out, j);
  } else if (cc.ok) {
    out << "reduces every circuit\n";
  } else {
    out << "does NOT reduce circuit " << to_string(cc.failing_circuit) << "\n";
  }
  return (!cc.ok && cfg.strict) ? 1 : 0;
}

int cmd_check_dim(const std::string& command, const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  MoveSet B = need_basis(cfg, A);
  CheckReport rep = command == "check-dim3" ? check_dim3(A, B) : check_dim4(A, B);
  if (cfg.format == "json") {
    njson j = envelope(command, cfg);
    j["reducing"] = rep.reducing;
    j["method"] = rep.method;
    j["detail"] = rep.detail;
    if (rep.failing) j["failing"] = vec_json(*rep.failing);
    j["fallback"] = rep.fallback;
    emit(out, j);
  } else {
    out << (rep.reducing ? "distance reducing (" : "NOT distance reducing (") << rep.detail
        << ")\n";
    if (rep.failing) out << "failing: " << to_string(*rep.failing) << "\n";
    out << "method: " << rep.method << "\n";
  }
  return (!rep.reducing && cfg.strict) ? 1 : 0;
}

int cmd_check_first_kind(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  MoveSet B = need_basis(cfg, A);
  std::optional<FirstKindBasis> F = admits_first_kind(A, B);
  if (!F) {
    if (cfg.format == "json") {
      njson j = envelope("check-first-kind", cfg);
      j["first_kind"] = false;
      emit(out, j);
    } else {
      out << "no triangular presentation (sign game lost)\n";
    }
    return cfg.strict ? 1 : 0;
  }
  FirstKindCheck fk = check_first_kind(*F);
  if (cfg.format == "json") {
    njson j = envelope("check-first-kind", cfg);
    j["first_kind"] = true;
    njson slots = njson::array();
    for (const Int& g : F->permuted_entries()) slots.push_back(int_json(g));
    j["slots"] = slots;
    njson rows = njson::array();
    for (int i = 2; i <= F->n; ++i) rows.push_back(vec_json(F->kernel_row(i)));
    j["rows"] = rows;
    j["reducing"] = fk.reducing;
    njson ps = njson::array();
    for (const RijReport& r : fk.reports) {
      njson p;
      p["i"] = r.i;
      p["j"] = r.j;
      p["cond_i"] = r.cond_i;
      p["cond_ii"] = r.cond_ii;
      p["cond_iii"] = r.cond_iii;
      p["satisfied"] = r.satisfied;
      ps.push_back(p);
    }
    j["pairs"] = ps;
    emit(out, j);
  } else {
    const RijReport* bad = nullptr;
    for (const RijReport& r : fk.reports)
      if (!r.satisfied && !bad) bad = &r;
    if (fk.reducing)
      out << "distance reducing (every pair satisfied)\n";
    else
      out << "NOT distance reducing (pair (" << bad->i << ", " << bad->j << ") fails)\n";
    out << "generators in slot order:";
    for (const Int& g : F->permuted_entries()) out << " " << g.get_str();
    out << "\n";
    for (int i = 2; i <= F->n; ++i)
      out << "row " << i << ": " << to_string(F->kernel_row(i)) << "\n";
    for (const RijReport& r : fk.reports) {
      out << "R(" << r.i << ", " << r.j << "): ";
      if (r.cond_i)
        out << "satisfied via (i)\n";
      else if (r.cond_ii)
        out << "satisfied via (ii)\n";
      else if (r.cond_iii)
        out << "satisfied via (iii)\n";
      else
        out << "unsatisfied\n";
    }
  }
  return (!fk.reducing && cfg.strict) ? 1 : 0;
}

int cmd_gluing(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  if (cfg.all_trees) {
    auto trees = gluing_type_all(A);
    if (cfg.format == "json") {
      njson j = envelope("gluing", cfg);
      j["ci"] = !trees.empty();
      njson ts = njson::array();
      for (const GluingTree& t : trees) ts.push_back(t.type_string(cfg.ascii));
      j["types"] = ts;
      emit(out, j);
    } else if (trees.empty()) {
      out << "not a complete intersection\n";
    } else {
      for (const GluingTree& t : trees) out << t.type_string(cfg.ascii) << "\n";
    }
    return 0;
  }
  std::optional<GluingTree> t = gluing_type(A);
  if (cfg.format == "json") {
    njson j = envelope("gluing", cfg);
    j["ci"] = t.has_value();
    if (t) j["type"] = t->type_string(cfg.ascii);
    emit(out, j);
  } else if (t) {
    out << t->type_string(cfg.ascii) << "\n";
  } else {
    out << "not a complete intersection\n";
  }
  return 0;
}

int cmd_sign_game(const JobConfig& cfg, std::ostream& out) {
  SignMatrix S = [&] {
    if (cfg.signs) return SignMatrix::parse(*cfg.signs);
    const SemigroupMatrix& A = need_matrix(cfg);
    return SignMatrix::of(need_basis(cfg, A));
  }();
  std::optional<std::vector<GameMove>> seq = sign_game(S);
  if (cfg.format == "json") {
    njson j;
    j["schema"] = 1;
    j["command"] = "sign-game";
    j["pattern"] = S.to_string();
    j["winnable"] = seq.has_value();
    if (seq) {
      njson ms = njson::array();
      for (const GameMove& m : *seq) ms.push_back(njson::array({m.row, m.col}));
      j["moves"] = ms;
    }
    emit(out, j);
    return 0;
  }
  out << "pattern: " << S.to_string() << "\n";
  if (!seq) {
    out << "not winnable\n";
  } else {
    out << "winnable:";
    for (const GameMove& m : *seq) out << " (" << m.row << ", " << m.col << ")";
    out << "\n";
  }
  return 0;
}

int cmd_irreducibles(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  IrreducibleSets ir = irreducible_sets(A);
  if (cfg.format == "json") {
    njson j = envelope("irreducibles", cfg);
    j["d_plus"] = rows_json(ir.d_plus);
    j["d_minus"] = rows_json(ir.d_minus);
    j["d"] = rows_json(ir.d.moves());
    j["d_weak"] = rows_json(ir.d_weak.moves());
    emit(out, j);
    return 0;
  }
  out << "d+ (" << ir.d_plus.size() << "):\n";
  print_moves(out, ir.d_plus);
  out << "d- (" << ir.d_minus.size() << "):\n";
  print_moves(out, ir.d_minus);
  out << "d (" << ir.d.moves().size() << "):\n";
  print_moves(out, ir.d.moves());
  out << "d weak (" << ir.d_weak.moves().size() << "):\n";
  print_moves(out, ir.d_weak.moves());
  return 0;
}

int cmd_universal_reducing(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  UniversalReducing ur = universal_distance_reducing(A);
  if (cfg.format == "json") {
    njson j = envelope("universal-reducing", cfg);
    j["count"] = ur.minimal_bases.size();
    j["core"] = rows_json(ur.core.moves());
    j["unreduced"] = rows_json(ur.unreduced);
    njson bs = njson::array();
    for (const MoveSet& b : ur.minimal_bases) bs.push_back(rows_json(b.moves()));
    j["minimal_bases"] = bs;
    j["universal"] = rows_json(ur.universal.moves());
    emit(out, j);
    return 0;
  }
  out << ur.minimal_bases.size() << " minimal distance-reducing Markov bases\n";
  out << "core (" << ur.core.moves().size() << "):\n";
  print_moves(out, ur.core.moves());
  out << "unreduced elements (" << ur.unreduced.size() << "):\n";
  print_moves(out, ur.unreduced);
  out << "universal union (" << ur.universal.moves().size() << "):\n";
  print_moves(out, ur.universal.moves());
  return 0;
}

int cmd_connect(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  MoveSet B = need_basis(cfg, A);
  if (!cfg.x || !cfg.y)
    throw Error(ErrorKind::InvalidInput, "--x and --y are required for connect");
  std::vector<IntVector> deltas = greedy_connect(B, *cfg.x, *cfg.y);
  if (cfg.format == "json") {
    njson j = envelope("connect", cfg);
    j["x"] = vec_json(*cfg.x);
    j["y"] = vec_json(*cfg.y);
    j["length"] = deltas.size();
    j["steps"] = rows_json(deltas);
    emit(out, j);
    return 0;
  }
  out << "path of length " << deltas.size() << "\n";
  print_moves(out, deltas);
  return 0;
}

int cmd_metric_cone(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  std::vector<IntVector> ground = cfg.basis ? *cfg.basis : graver(A).moves();
  Cone c = metric_cone(ground);
  if (cfg.format == "json") {
    njson j = envelope("metric-cone", cfg);
    j["variables"] = c.sys.labels;
    njson iq = njson::array();
    for (const Inequality& q : c.sys.rows) iq.push_back(ineq_json(q));
    j["inequalities"] = iq;
    j["rays"] = rows_json(c.rays);
    j["interior"] = vec_json(c.interior);
    emit(out, j);
    return 0;
  }
  out << "variables (" << c.sys.labels.size() << "):\n";
  for (std::size_t i = 0; i < c.sys.labels.size(); ++i)
    out << "n" << (i + 1) << " = " << c.sys.labels[i] << "\n";
  out << "inequalities (" << c.sys.rows.size() << "):\n";
  for (const Inequality& q : c.sys.rows) out << render_ineq(q) << " [" << q.origin << "]\n";
  out << "rays (" << c.rays.size() << "):\n";
  print_moves(out, c.rays);
  out << "interior: " << to_string(c.interior) << "\n";
  return 0;
}

njson relation_json(const RelationSystem& rs, const std::vector<IntVector>& basis_moves) {
  njson j;
  j["name"] = rs.relation.name;
  j["target"] = rs.relation.target + 1;
  j["target_coeff"] = int_json(rs.relation.target_coeff);
  j["multipliers"] = vec_json(rs.relation.multipliers);
  njson os = njson::array();
  for (const ReductionOption& opt : rs.options) {
    njson o;
    o["reduce_by"] = to_string(basis_moves[static_cast<std::size_t>(opt.reducer)]);
    njson iq = njson::array();
    for (const Inequality& q : opt.ineqs) iq.push_back(ineq_json(q));
    o["inequalities"] = iq;
    os.push_back(o);
  }
  j["options"] = os;
  return j;
}

void print_relations(std::ostream& out, const std::vector<RelationSystem>& rels,
                     const std::vector<IntVector>& basis_moves) {
  out << "relations (" << rels.size() << "):\n";
  for (const RelationSystem& rs : rels) {
    out << rs.relation.name << ": target n" << (rs.relation.target + 1) << ", multipliers "
        << to_string(rs.relation.multipliers) << "\n";
    for (const ReductionOption& opt : rs.options) {
      out << "  reduce by " << to_string(basis_moves[static_cast<std::size_t>(opt.reducer)])
          << " when ";
      for (std::size_t k = 0; k < opt.ineqs.size(); ++k) {
        if (k) out << " and ";
        out << render_ineq(opt.ineqs[k]);
      }
      out << "\n";
    }
  }
}

void print_ground(std::ostream& out, const std::vector<IntVector>& ground) {
  out << "ground (" << ground.size() << "):\n";
  for (std::size_t i = 0; i < ground.size(); ++i)
    out << "n" << (i + 1) << " = " << to_string(ground[i]) << "\n";
}

int cmd_closure(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  MoveSet B = need_basis(cfg, A);
  MoveSet start = graver(A).unite(B);
  MoveSet closed = b_reduction_closure(B, start, cfg.coeff_bound);
  MoveSet added = closed.subtract(start);
  if (cfg.format == "json") {
    njson j = envelope("closure", cfg);
    j["coeff_bound"] = int_json(cfg.coeff_bound);
    j["moves"] = rows_json(closed.moves());
    j["added"] = rows_json(added.moves());
    emit(out, j);
    return 0;
  }
  out << "closure: " << closed.moves().size() << " moves (" << added.moves().size()
      << " added)\n";
  print_moves(out, closed.moves());
  if (!added.moves().empty()) {
    out << "added:\n";
    print_moves(out, added.moves());
  }
  return 0;
}

int cmd_reduction_complex(const JobConfig& cfg, std::ostream& out) {
  const SemigroupMatrix& A = need_matrix(cfg);
  MoveSet B = need_basis(cfg, A);
  MoveSet start = graver(A).unite(B);
  if (cfg.weak_projection) {
    auto rels = reduction_inequality_sets(B, start, cfg.coeff_bound, true);
    if (cfg.format == "json") {
      njson j = envelope("reduction-complex", cfg);
      j["coeff_bound"] = int_json(cfg.coeff_bound);
      j["weak_projection"] = true;
      j["ground"] = rows_json(start.moves());
      njson rj = njson::array();
      for (const RelationSystem& rs : rels) rj.push_back(relation_json(rs, B.moves()));
      j["relations"] = rj;
      emit(out, j);
      return 0;
    }
    out << "projected inequalities (outer approximation; no cells)\n";
    print_ground(out, start.moves());
    print_relations(out, rels, B.moves());
    return 0;
  }
  MoveSet closed = b_reduction_closure(B, start, cfg.coeff_bound);
  ReductionComplex cx = distance_reducing_complex(B, closed, cfg.coeff_bound,
                                                  cfg.intersections);
  if (cfg.format == "json") {
    njson j = envelope("reduction-complex", cfg);
    j["coeff_bound"] = int_json(cfg.coeff_bound);
    j["weak_projection"] = false;
    j["ground"] = rows_json(cx.ground);
    j["metric"] = cone_json(cx.metric);
    njson rj = njson::array();
    for (const RelationSystem& rs : cx.relations) rj.push_back(relation_json(rs, B.moves()));
    j["relations"] = rj;
    njson cs = njson::array();
    for (const Cone& c : cx.cells) cs.push_back(cone_json(c));
    j["cells"] = cs;
    if (cfg.intersections) {
      njson ov = njson::array();
      for (const Cone& c : cx.overlaps) ov.push_back(cone_json(c));
      j["overlaps"] = ov;
    }
    emit(out, j);
    return 0;
  }
  print_ground(out, cx.ground);
  out << "metric cone rays (" << cx.metric.rays.size() << "):\n";
  print_moves(out, cx.metric.rays);
  print_relations(out, cx.relations, B.moves());
  out << "cells (" << cx.cells.size() << "):\n";
  for (std::size_t i = 0; i < cx.cells.size(); ++i) {
    out << "cell " << (i + 1) << " (" << cx.cells[i].rays.size() << " rays):\n";
    print_moves(out, cx.cells[i].rays);
  }
  if (cfg.intersections) {
    out << "overlaps (" << cx.overlaps.size() << "):\n";
    for (std::size_t i = 0; i < cx.overlaps.size(); ++i) {
      out << "overlap " << (i + 1) << " (" << cx.overlaps[i].rays.size() << " rays):\n";
      print_moves(out, cx.overlaps[i].rays);
    }
  }
  return 0;
}

int cmd_selftest(const JobConfig& cfg, std::ostream& out) {
  std::vector<CheckResult> checks = verification_suite();
  std::size_t failed = 0;
  for (const CheckResult& c : checks)
    if (!c.pass) ++failed;
  if (cfg.format == "json") {
    njson j;
    j["schema"] = 1;
    j["command"] = "selftest";
    njson cs = njson::array();
    for (const CheckResult& c : checks) {
      njson e;
      e["group"] = c.group;
      e["name"] = c.name;
      e["pass"] = c.pass;
      e["detail"] = c.detail;
      cs.push_back(e);
    }
    j["checks"] = cs;
    j["total"] = checks.size();
    j["failed"] = failed;
    emit(out, j);
  } else {
    for (const CheckResult& c : checks)
      out << (c.pass ? "[PASS] " : "[FAIL] ") << c.group << "/" << c.name << ": " << c.detail
          << "\n";
    out << checks.size() << " checks, " << (checks.size() - failed) << " passed, " << failed
        << " failed\n";
  }
  return failed == 0 ? 0 : 1;
}

int dispatch(const std::string& command, const JobConfig& cfg, std::ostream& out) {
  if (command == "circuits" || command == "graver" || command == "indispensables" ||
      command == "markov-universal")
    return cmd_move_listing(command, cfg, out);
  if (command == "markov-min") return cmd_markov_min(cfg, out);
  if (command == "verify-markov") return cmd_verify_markov(cfg, out);
  if (command == "check-reducing" || command == "check-strong")
    return cmd_check_reducing(command, cfg, out);
  if (command == "check-circuits") return cmd_check_circuits(cfg, out);
  if (command == "check-dim3" || command == "check-dim4") return cmd_check_dim(command, cfg, out);
  if (command == "check-first-kind") return cmd_check_first_kind(cfg, out);
  if (command == "gluing") return cmd_gluing(cfg, out);
  if (command == "sign-game") return cmd_sign_game(cfg, out);
  if (command == "irreducibles") return cmd_irreducibles(cfg, out);
  if (command == "universal-reducing") return cmd_universal_reducing(cfg, out);
  if (command == "connect") return cmd_connect(cfg, out);
  if (command == "metric-cone") return cmd_metric_cone(cfg, out);
  if (command == "reduction-complex") return cmd_reduction_complex(cfg, out);
  if (command == "closure") return cmd_closure(cfg, out);
  if (command == "selftest") return cmd_selftest(cfg, out);
  throw Error(ErrorKind::InvalidInput, "unknown command '" + command + "'");
}

}  // namespace

IntVector parse_cli_vector(const std::string& text, bool allow_negative) {
  IntVector out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    if (!integer_token(tok))
      throw Error(ErrorKind::ParseError, "malformed integer '" + tok + "'");
    if (!allow_negative && tok[0] == '-')
      throw Error(ErrorKind::ParseError, "negative entry '" + tok + "' not allowed here");
    Int z;
    if (z.set_str(tok, 10) != 0)
      throw Error(ErrorKind::ParseError, "malformed integer '" + tok + "'");
    out.push_back(std::move(z));
    tok.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',')
      flush();
    else
      tok.push_back(c);
  }
  flush();
  if (out.empty()) throw Error(ErrorKind::ParseError, "empty vector");
  return out;
}

std::vector<IntVector> parse_cli_rows(const std::string& text, bool allow_negative) {
  std::vector<IntVector> out;
  std::string row;
  auto flush = [&] {
    bool blank = true;
    for (char c : row)
      if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') blank = false;
    if (!blank) out.push_back(parse_cli_vector(row, allow_negative));
    row.clear();
  };
  for (char c : text) {
    if (c == ';' || c == '\n')
      flush();
    else
      row.push_back(c);
  }
  flush();
  if (out.empty()) throw Error(ErrorKind::ParseError, "empty matrix");
  return out;
}

int run(const std::string& command, const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "text" && cfg.format != "json")
      throw Error(ErrorKind::InvalidInput, "--format must be 'text' or 'json'");
    if (cfg.search_caps > 0)
      ::setenv("MSMB_MAX_CELLS", std::to_string(cfg.search_caps).c_str(), 1);
    return dispatch(command, cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Markov, Graver and distance-reduction toolkit for integer matrices"};
  app.name("msmb");
  std::string command;
  std::string matrix_text, basis_text, x_text, y_text, signs_text;
  std::string format = "text";
  long long kernel_ball = 0;
  long long coeff_bound = 3;
  long long max_cells = 0;
  unsigned long seed = 0;
  bool strict = false, ascii = false, all_trees = false, intersections = false, weak = false;
  app.add_option("command", command,
                 "circuits | graver | indispensables | markov-min | markov-universal | "
                 "verify-markov | check-reducing | check-strong | check-circuits | "
                 "check-dim3 | check-dim4 | check-first-kind | gluing | sign-game | "
                 "irreducibles | universal-reducing | connect | metric-cone | "
                 "reduction-complex | closure | selftest")
      ->required();
  app.add_option("--matrix", matrix_text, "matrix rows separated by ';' (entries nonnegative)");
  app.add_option("--basis", basis_text, "move rows separated by ';' (negatives allowed)");
  app.add_option("--x", x_text, "fiber point for connect");
  app.add_option("--y", y_text, "fiber point for connect");
  app.add_option("--signs", signs_text, "sign pattern rows over '+', '-', '.' or '0'");
  app.add_option("--format", format, "output format: text or json");
  app.add_option("--kernel-ball", kernel_ball,
                 "also verify fiber connectivity exhaustively up to this norm");
  app.add_option("--coeff-bound", coeff_bound,
                 "relation coefficient bound for closure / reduction-complex (default 3)");
  app.add_option("--max-cells", max_cells, "enumeration budget override");
  app.add_option("--seed", seed, "seed recorded in the report");
  app.add_flag("--strict", strict, "exit 1 when a check-* command answers false");
  app.add_flag("--ascii", ascii, "ASCII gluing notation (o_ instead of the ring operator)");
  app.add_flag("--all-trees", all_trees, "list every gluing tree");
  app.add_flag("--intersections", intersections, "also compute pairwise cell overlaps");
  app.add_flag("--weak-projection", weak,
               "projected reduction inequalities instead of requiring closure");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  JobConfig cfg;
  try {
    if (!matrix_text.empty())
      cfg.matrix = SemigroupMatrix::from_rows(parse_cli_rows(matrix_text, false));
    if (!basis_text.empty()) cfg.basis = parse_cli_rows(basis_text, true);
    if (!x_text.empty()) cfg.x = parse_cli_vector(x_text, false);
    if (!y_text.empty()) cfg.y = parse_cli_vector(y_text, false);
    if (!signs_text.empty()) cfg.signs = signs_text;
    cfg.kernel_ball = Int(static_cast<long>(kernel_ball));
    cfg.coeff_bound = Int(static_cast<long>(coeff_bound));
    cfg.search_caps = max_cells;
    cfg.format = format;
    cfg.seed = seed;
    cfg.strict = strict;
    cfg.ascii = ascii;
    cfg.all_trees = all_trees;
    cfg.intersections = intersections;
    cfg.weak_projection = weak;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return run(command, cfg, out, err);
}

}  // namespace msmb
