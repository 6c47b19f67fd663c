#include "gradval/commands.hpp"

#include "gradval/error.hpp"
#include "gradval/generators.hpp"
#include "gradval/json_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace gradval {

using io::json;

namespace {

// Decomposition boxes default to at most this many lattice points.
constexpr unsigned long kBoxPointBudget = 40000;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Accumulates checks and the summary while a command runs; `path` names
/// the scenario location the current stage reads.
struct Run {
  json report = json::object();
  json checks = json::array();
  std::ostringstream summary;
  std::string path = "/";
  bool all_ok = true;

  void check(const std::string &name, bool ok, const std::string &detail = {}) {
    json c = {{"name", name}, {"ok", ok}};
    if (!detail.empty())
      c["detail"] = detail;
    checks.push_back(std::move(c));
    all_ok = all_ok && ok;
    summary << (ok ? "  ok    " : "  FAIL  ") << name;
    if (!detail.empty())
      summary << " (" << detail << ")";
    summary << '\n';
  }
};

std::string str(std::size_t v) { return std::to_string(v); }

const json &at(const json &j, const char *name, Run &run, const std::string &path) {
  run.path = path;
  return io::field(j, name);
}

// ---------------------------------------------------------------- snf

void cmd_snf(const json &in, Run &run) {
  const json &mj = in.is_object() ? at(in, "matrix", run, "/matrix") : in;
  ExactMatrix A = io::matrix_from(mj);
  auto snf = smith_normal_form(A);
  auto herm = hermite_basis(A);
  json &r = run.report;
  r["U"] = io::to_json(snf.U);
  r["D"] = io::to_json(snf.D);
  r["V"] = io::to_json(snf.V);
  r["diagonal"] = io::to_json(snf.diagonal());
  r["rank"] = snf.rank();
  json basis = json::array();
  for (std::size_t j = 0; j < herm.rank(); ++j)
    basis.push_back(io::to_json(herm.basis_vector(j)));
  r["column_lattice_basis"] = basis;
  if (A.square()) {
    Int det = determinant(A);
    r["determinant"] = io::to_json(det);
    if (det != 0) {
      r["index"] = io::to_json(abs_value(det));
      r["invariants"] = io::to_json(quotient_invariants(A));
    }
  }
  run.summary << "snf: " << A.rows() << "x" << A.cols() << " matrix of rank " << snf.rank()
              << '\n';
  run.check("U*A*V = D", snf.U * A * snf.V == snf.D);
  run.check("|det U| = |det V| = 1",
            abs_value(determinant(snf.U)) == 1 && abs_value(determinant(snf.V)) == 1);
}

// ---------------------------------------------------------------- shared stages

CosetOptions coset_options(const json &scn, Run &run, const ShapePtr &shape) {
  CosetOptions opts;
  if (!scn.contains("value_groups"))
    return opts;
  run.path = "/value_groups";
  const json &vg = scn["value_groups"];
  if (vg.contains("phi_nu")) {
    run.path = "/value_groups/phi_nu";
    opts.phi_nu = io::value_group_from(vg["phi_nu"], shape);
  }
  if (vg.contains("phi_nu_star")) {
    run.path = "/value_groups/phi_nu_star";
    opts.phi_nu_star = io::value_group_from(vg["phi_nu_star"], shape);
  }
  return opts;
}

json coset_json(const CosetSystem &cs) {
  json pts = json::array();
  for (std::size_t s = 0; s < cs.size(); ++s)
    pts.push_back({{"sigma", io::to_json(cs.lambda.points[s])},
                   {"value", io::to_json(cs.values[s])},
                   {"label", io::to_json(cs.labels[s])}});
  return {{"e", io::to_json(cs.e)},
          {"invariants", io::to_json(cs.invariants)},
          {"lambda", pts},
          {"phi_nu", io::to_json(cs.phi_nu)},
          {"phi_nu_star", io::to_json(cs.phi_nu_star)}};
}

void decomposition_stage(const CosetSystem &cs, const CommandOptions &opts, Run &run) {
  run.path = "/monomial_extension/A";
  const std::size_t n = cs.lambda.spanning.size();
  Int dflt = default_box_bound(cs.lambda.spanning);
  Int used = opts.box_bound ? *opts.box_bound : capped_box_bound(dflt, n);
  if (used < 1)
    throw UsageError("--box-bound must be positive");
  auto rep = verify_disjoint_decomposition(cs.lambda, LatticeBox{0, used});
  json hits = json::array();
  for (auto h : rep.hits_per_coset)
    hits.push_back(h);
  json viol = json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(rep.violations.size(), 10); ++i)
    viol.push_back({{"point", io::to_json(rep.violations[i].point)},
                    {"hits", rep.violations[i].hits}});
  run.report["decomposition"] = {{"box", {{"lower", "0"}, {"upper", io::to_json(used)}}},
                                 {"default_box_bound", io::to_json(dflt)},
                                 {"points_checked", rep.points_checked},
                                 {"hits_per_coset", hits},
                                 {"violations", viol}};
  run.check("saturation in box [0," + to_string(used) + ")^" + str(n) +
                " is the disjoint union of the cosets",
            rep.ok(), str(rep.points_checked) + " points");
}

std::string trace_counts(const MonomializationTrace &t) {
  std::size_t s = 0, r = 0, u = 0;
  for (const auto &step : t.steps)
    std::visit(
        [&](const auto &x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, STransform>)
            ++s;
          else if constexpr (std::is_same_v<T, RTransform>)
            ++r;
          else
            ++u;
        },
        step);
  return str(s) + " S, " + str(r) + " R, " + str(u) + " rescale";
}

json trace_summary(const MonomializationTrace &t) {
  auto et0 = adjoint_relations(t.initial).e;
  auto et1 = adjoint_relations(t.final).e;
  return {{"steps", t.steps.size()},
          {"kinds", trace_counts(t)},
          {"det_AT_initial", io::to_json(et0)},
          {"det_AT_final", io::to_json(et1)}};
}

// Monomializes, replays, and checks the trace invariants.
MonomializationTrace monomialize_stage(const MonomialExtension &me, Run &run) {
  run.path = "/monomial_extension";
  auto trace = strong_monomialize(me);
  verify_replay(trace);
  bool positive = true;
  MonomialExtension cur = trace.initial;
  for (const auto &step : trace.steps) {
    cur = apply_step(cur, step);
    try {
      (void)induced_x_values(cur);
    } catch (const Error &) {
      positive = false;
    }
  }
  run.check("monomialization replays to strong monomial form", true, trace_counts(trace));
  run.check("all intermediate values positive", positive);
  run.check("|det A_T| preserved",
            adjoint_relations(trace.initial).e == adjoint_relations(trace.final).e);
  return trace;
}

struct GradedStage {
  std::shared_ptr<const GradedModule> module;
};

GradedStage graded_stage(std::shared_ptr<const CosetSystem> cs, const MonomialExtension &ssm,
                         const Int &f, const Int &f0, Run &run) {
  run.path = "/residue_degree";
  GradedAlgebra base{ValueSemigroup(ssm.shape, induced_x_values(ssm)), f0};
  auto m = GradedModule::create(cs, base, f);
  const Int rank = free_rank(*m);
  auto hits = coset_hits(*m);
  auto fixed = fixed_labels(*m);
  std::vector<std::size_t> trivial;
  for (std::size_t s = 0; s < cs->size(); ++s)
    if (cs->labels[s].is_trivial())
      trivial.push_back(s);

  // One unit term per label; its invariant part must keep exactly the
  // labels of the trivial coset.
  GradedModuleElement::Terms all, kept;
  const RationalVector unit = [&] {
    RationalVector v(m->coefficient_dim(), Rational(0));
    v[0] = 1;
    return v;
  }();
  const RationalVector zero_degree(ssm.shape->dimension(), Rational(0));
  for (const auto &label : m->labels()) {
    TermKey k{label, zero_degree, Rational(0)};
    all.emplace(k, unit);
    if (cs->labels[label.sigma].is_trivial())
      kept.emplace(k, unit);
  }
  bool invariant_ok = invariant_part(m->element(all)) == m->element(kept);

  json hit_json = json::array();
  bool each_f = true;
  for (const auto &[res, count] : hits) {
    hit_json.push_back({{"residues", io::to_json(res)}, {"labels", count}});
    each_f = each_f && Int(static_cast<unsigned long>(count)) == f;
  }
  json fixed_json = json::array();
  for (auto s : fixed)
    fixed_json.push_back(io::to_json(cs->lambda.points[s]));
  run.report["graded_module"] = {{"e", io::to_json(cs->e)},
                                 {"f", io::to_json(f)},
                                 {"rank", io::to_json(rank)},
                                 {"labels", m->labels().size()},
                                 {"coset_hits", hit_json},
                                 {"fixed_labels", fixed_json}};
  run.check("rank e*f = " + to_string(cs->e) + "*" + to_string(f),
            rank == cs->e * f && Int(static_cast<unsigned long>(m->labels().size())) == rank);
  run.check("labels exhaust the value-group quotient",
            Int(static_cast<unsigned long>(hits.size())) == cs->quotient->index() &&
                cs->quotient->index() == cs->e);
  run.check("each coset hit f times", each_f);
  run.check("fixed labels are the trivial coset", fixed == trivial);
  run.check("invariant part keeps the trivial coset", invariant_ok);
  return {m};
}

// ---------------------------------------------------------------- semigroups

void semigroup_stage(const json &sj, Run &run, const std::string &base_path) {
  run.path = base_path;
  ShapePtr shape =
      sj.contains("blocks") ? io::shape_from(sj["blocks"]) : GroupShape::rational(1);
  std::optional<ValueSemigroup> small;
  if (sj.contains("generating_sequence")) {
    run.path = base_path + "/generating_sequence";
    std::vector<OrderedGroupElement> seq;
    for (const auto &x : sj["generating_sequence"])
      seq.push_back(io::element_from(shape, x));
    small = generating_sequence_semigroup(seq);
  } else {
    run.path = base_path + "/small";
    small = io::semigroup_from(at(sj, "small", run, base_path + "/small"), shape);
  }
  json &r = run.report["semigroups"];
  r["small"] = io::to_json(*small);

  if (sj.contains("queries")) {
    run.path = base_path + "/queries";
    json q = json::array();
    for (const auto &x : sj["queries"]) {
      auto g = io::element_from(shape, x);
      q.push_back({{"element", io::to_json(g)}, {"member", semigroup_membership(g, *small)}});
    }
    r["queries"] = q;
  }
  if (!sj.contains("big"))
    return;

  run.path = base_path + "/big";
  auto big = io::semigroup_from(sj["big"], shape);
  r["big"] = io::to_json(big);
  run.path = base_path + "/bound";
  Rational bound = sj.contains("bound") ? io::rational_from(sj["bound"], "bound") : Rational(4);
  run.path = base_path;
  auto diff = semigroup_difference(*small, big, bound);
  json dj = json::array();
  for (const auto &g : diff)
    dj.push_back(io::to_json(g));
  const bool groups_equal = same_group(small->group(), big.group());
  r["bound"] = io::to_json(bound);
  r["difference"] = dj;
  r["groups_equal"] = groups_equal;

  const bool expect_growth = sj.value("expect_growth", false);
  r["expect_growth"] = expect_growth;
  if (sj.contains("witness")) {
    run.path = base_path + "/witness";
    auto w = io::element_from(shape, sj["witness"]);
    run.check("witness " + w.to_string() + " lies outside the small semigroup",
              !semigroup_membership(w, *small));
    run.check("witness reported in the difference",
              std::find(diff.begin(), diff.end(), w) != diff.end());
  }
  if (expect_growth) {
    run.check("semigroup grows (expected)", !diff.empty(),
              str(diff.size()) + " new elements up to " + to_string(bound));
    run.check("generated groups coincide", groups_equal);
  } else {
    run.check("semigroups agree up to the bound", diff.empty(),
              str(diff.size()) + " new elements");
  }
}

// ---------------------------------------------------------------- ledger

void ledger_stage(const json &lj, Run &run, const std::string &base_path) {
  std::vector<ExtensionRecord> recs;
  json records;
  if (lj.is_array())
    records = lj;
  else if (lj.is_object() && lj.contains("N"))
    records = json::array({lj});
  else
    records = at(lj, "records", run, base_path + "/records");
  if (!records.is_array())
    throw UsageError("records must be an array");
  json out = json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    run.path = base_path + "/records/" + str(i);
    recs.push_back(io::record_from(records[i]));
    json rj = io::to_json(recs.back());
    if (recs.back().r())
      rj["unramified"] = unramified_criterion(recs.back());
    out.push_back(rj);
    if (recs.back().residue_char() == 0)
      run.check("record " + str(i) + ": characteristic 0 gives delta = 0 and N = e*f",
                recs.back().defect() == 0 &&
                    recs.back().degree() == recs.back().e() * recs.back().f());
  }
  json &r = run.report["ledger"];
  r["records"] = out;

  const json empty = json::array();
  const json &towers = lj.is_object() && lj.contains("towers") ? lj["towers"] : empty;
  json tj = json::array();
  for (std::size_t t = 0; t < towers.size(); ++t) {
    run.path = base_path + "/towers/" + str(t);
    ExtensionRecord acc = ExtensionRecord::trivial();
    bool first = true;
    for (const auto &idx : towers[t]) {
      std::size_t i = io::index_from(idx, "tower index");
      if (i >= recs.size())
        fail(ErrorCode::IndexError, "tower refers to record " + str(i));
      acc = first ? recs[i] : compose_tower(acc, recs[i]);
      first = false;
    }
    tj.push_back(io::to_json(acc));
  }
  if (!towers.empty())
    r["towers"] = tj;

  const json &inertia = lj.is_object() && lj.contains("inertia") ? lj["inertia"] : empty;
  for (std::size_t k = 0; k < inertia.size(); ++k) {
    run.path = base_path + "/inertia/" + str(k);
    const json &c = inertia[k];
    std::size_t i = io::index_from(io::field(c, "record"), "record");
    if (i >= recs.size())
      fail(ErrorCode::IndexError, "inertia check refers to record " + str(i));
    bool ok = true;
    std::string detail;
    try {
      check_inertia_indices(recs[i], io::int_from(io::field(c, "index_over_base"), "index"),
                            io::int_from(io::field(c, "index_over_intermediate"), "index"));
    } catch (const Error &e) {
      if (e.code() != ErrorCode::Inconsistent)
        throw;
      ok = false;
      detail = e.what();
    }
    run.check("inertia indices of record " + str(i), ok, detail);
  }
  run.summary << "ledger: " << recs.size() << " records\n";
}

// ---------------------------------------------------------------- extensions

const json &extension_json(const json &in, Run &run) {
  if (in.is_object() && in.contains("monomial_extension")) {
    run.path = "/monomial_extension";
    return in["monomial_extension"];
  }
  run.path = "/";
  return in;
}

void report_validation(const MonomialExtension &me, Run &run) {
  auto diags = validate(me);
  json dj = json::array();
  for (const auto &d : diags)
    dj.push_back(io::to_json(d));
  run.report["diagnostics"] = dj;
  run.check("extension is valid", diags.empty(),
            diags.empty() ? std::string() : diags.front().code + ": " + diags.front().message);
}

MonomialExtension generated_extension(const json &scn, const CommandOptions &opts, Run &run) {
  run.path = "/generator";
  const json &kj = io::field(scn, "generator");
  if (!kj.is_string())
    throw UsageError("generator must be a string");
  const std::string kind = kj.get<std::string>();
  GeneratorParams params;
  if (scn.contains("params")) {
    run.path = "/params";
    const json &p = scn["params"];
    if (p.contains("max_rank"))
      params.max_rank = io::index_from(p["max_rank"], "max_rank");
    if (p.contains("max_size"))
      params.max_size = io::index_from(p["max_size"], "max_size");
    if (p.contains("max_h"))
      params.max_h = static_cast<long>(io::index_from(p["max_h"], "max_h"));
    if (p.contains("max_diag"))
      params.max_diag = static_cast<long>(io::index_from(p["max_diag"], "max_diag"));
    if (p.contains("max_index"))
      params.max_index = io::int_from(p["max_index"], "max_index");
  }
  run.path = "/seed";
  std::uint64_t seed = opts.seed ? *opts.seed
                                 : (scn.contains("seed") ? io::index_from(scn["seed"], "seed") : 0);
  run.report["seed"] = std::to_string(seed);
  std::mt19937_64 rng(seed);
  run.path = "/generator";
  if (kind == "triangular")
    return random_triangular(rng, params);
  if (kind == "ssm")
    return random_ssm(rng, params);
  throw UsageError("generator must be triangular or ssm");
}

Int residue_degree(const json &in, const char *name, Run &run) {
  if (!in.is_object() || !in.contains(name))
    return 1;
  run.path = std::string("/") + name;
  Int f = io::int_from(in[name], name);
  if (f < 1)
    throw UsageError(std::string(name) + " must be at least 1");
  return f;
}

// ---------------------------------------------------------------- commands

void cmd_cosets(const json &in, const CommandOptions &opts, Run &run) {
  auto me = io::extension_from(extension_json(in, run));
  // Dependent T-values are left to the coset construction, which reports
  // them as a hypothesis failure with a witness.
  auto diags = validate(me);
  json dj = json::array();
  bool structural = false;
  for (const auto &d : diags) {
    dj.push_back(io::to_json(d));
    structural = structural || d.code != "DependentTValues";
  }
  run.report["diagnostics"] = dj;
  if (structural) {
    run.check("extension is valid", false, diags.front().code + ": " + diags.front().message);
    return;
  }
  auto opts_c = coset_options(in, run, me.shape);
  run.path = in.contains("value_groups") ? "/value_groups" : "/monomial_extension";
  auto cs = coset_system(me, opts_c);
  run.report["cosets"] = coset_json(cs);
  run.summary << "cosets: e = " << to_string(cs.e) << ", |Lambda| = " << cs.size() << '\n';
  run.check("|Lambda| = e", Int(static_cast<unsigned long>(cs.size())) == cs.e);
  decomposition_stage(cs, opts, run);
}

void cmd_monomialize(const json &in, Run &run) {
  auto me = io::extension_from(extension_json(in, run));
  report_validation(me, run);
  if (!run.all_ok)
    return;
  auto trace = monomialize_stage(me, run);
  run.report["trace"] = io::to_json(trace);
  run.report["trace_summary"] = trace_summary(trace);
  run.summary << "monomialize: " << trace.steps.size() << " steps\n";
}

void cmd_replay(const std::string &text, Run &run) {
  run.path = "/trace";
  json tj = io::parse(text);
  const json &body = tj.is_object() && tj.contains("trace") ? tj["trace"] : tj;
  auto trace = io::trace_from(body);
  run.report["replay_sha256"] = sha256_hex(text);
  verify_replay(trace);
  run.report["trace_summary"] = trace_summary(trace);
  run.summary << "replay: " << trace.steps.size() << " steps\n";
  run.check("trace replays bit-exactly to strong monomial form", true);
}

void cmd_graded(const json &in, const CommandOptions &, Run &run) {
  auto me = io::extension_from(extension_json(in, run));
  MonomialExtension ssm = me;
  if (!is_ssm_form(me))
    ssm = monomialize_stage(me, run).final;
  Int f = residue_degree(in, "residue_degree", run);
  Int f0 = residue_degree(in, "base_residue_degree", run);
  run.path = "/value_groups";
  auto cs = std::make_shared<const CosetSystem>(coset_system(SSMForm(ssm),
                                                             coset_options(in, run, ssm.shape)));
  run.report["cosets"] = coset_json(*cs);
  auto stage = graded_stage(cs, ssm, f, f0, run);

  if (in.contains("elements")) {
    json ej = json::array();
    std::vector<IntVector> actions;
    if (in.contains("act")) {
      run.path = "/act";
      for (const auto &g : in["act"])
        actions.push_back(io::int_vector_from(g, "act"));
    }
    for (std::size_t i = 0; i < in["elements"].size(); ++i) {
      run.path = "/elements/" + str(i);
      auto x = io::module_element_from(stage.module, in["elements"][i]);
      json xj = {{"terms", io::to_json(x)}, {"invariant_part", io::to_json(invariant_part(x))}};
      if (!x.is_zero())
        xj["value"] = io::to_json(element_value(x));
      json comps = json::array();
      for (const auto &[sigma, part] : expand(x))
        comps.push_back({{"sigma", io::to_json(cs->lambda.points[sigma])},
                         {"terms", io::to_json(part)}});
      xj["components"] = comps;
      json acted = json::array();
      for (const auto &g : actions)
        acted.push_back({{"g", io::to_json(g)},
                         {"terms", io::to_json(galois_character_action(g, x))}});
      if (!actions.empty())
        xj["actions"] = acted;
      ej.push_back(xj);
      run.check("element " + str(i) + " reassembles from its components",
                reassemble(stage.module, expand(x)) == x);
    }
    run.report["elements"] = ej;
  }
  run.summary << "graded: rank " << to_string(free_rank(*stage.module)) << '\n';
}

void cmd_pipeline(const json &in, const CommandOptions &opts, Run &run) {
  if (in.contains("name"))
    run.report["name"] = in["name"];
  run.summary << "pipeline " << in.value("name", std::string("(unnamed)")) << '\n';

  MonomialExtension me = in.contains("generator") ? generated_extension(in, opts, run)
                                                  : io::extension_from(extension_json(in, run));
  run.report["monomial_extension"] = io::to_json(me);
  run.path = "/monomial_extension";
  report_validation(me, run);
  if (!run.all_ok)
    return;

  auto trace = monomialize_stage(me, run);
  run.report["trace_summary"] = trace_summary(trace);
  run.report["trace"] = io::to_json(trace);

  Int f = residue_degree(in, "residue_degree", run);
  auto copts = coset_options(in, run, me.shape);
  run.path = in.contains("value_groups") ? "/value_groups" : "/monomial_extension";
  auto cs = std::make_shared<const CosetSystem>(coset_system(SSMForm(trace.final), copts));
  run.report["cosets"] = coset_json(*cs);
  run.summary << "  e = " << to_string(cs->e) << ", f = " << to_string(f)
              << ", e*f = " << to_string(Int(cs->e * f)) << '\n';
  graded_stage(cs, trace.final, f, 1, run);
  decomposition_stage(*cs, opts, run);

  if (in.contains("semigroups"))
    semigroup_stage(in["semigroups"], run, "/semigroups");
  if (in.contains("extension_records")) {
    json lj = in["extension_records"];
    if (lj.is_array())
      lj = json{{"records", lj}};
    ledger_stage(lj, run, "/extension_records");
  }
}

using Handler = std::function<void(const json &, const CommandOptions &, Run &)>;

const std::map<std::string, Handler, std::less<>> &handlers() {
  static const std::map<std::string, Handler, std::less<>> table = {
      {"snf", [](const json &in, const CommandOptions &, Run &run) { cmd_snf(in, run); }},
      {"cosets", cmd_cosets},
      {"monomialize",
       [](const json &in, const CommandOptions &, Run &run) { cmd_monomialize(in, run); }},
      {"graded", cmd_graded},
      {"semigroup",
       [](const json &in, const CommandOptions &, Run &run) { semigroup_stage(in, run, ""); }},
      {"ledger",
       [](const json &in, const CommandOptions &, Run &run) { ledger_stage(in, run, ""); }},
      {"pipeline", cmd_pipeline},
  };
  return table;
}

json error_json(ErrorCode code, const std::string &message, const std::string &path) {
  return {{"code", std::string(code_name(code))},
          {"number", static_cast<int>(code)},
          {"message", message},
          {"path", path.empty() ? "/" : path}};
}

} // namespace

const std::vector<std::string> &command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto &[name, h] : handlers())
      out.push_back(name);
    return out;
  }();
  return names;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

Int capped_box_bound(const Int &requested, std::size_t n) {
  if (n == 0)
    return requested;
  Int edge = 1;
  for (;;) {
    Int next = edge + 1, points = 1;
    for (std::size_t i = 0; i < n; ++i)
      points *= next;
    if (points > kBoxPointBudget || next > requested)
      break;
    edge = next;
  }
  return edge;
}

CommandResult run_command(std::string_view command, std::string_view input,
                          const CommandOptions &options) {
  Run run;
  CommandResult result;
  run.report["command"] = std::string(command);
  run.report["input_sha256"] = sha256_hex(input);
  auto finish = [&](int exit_code, std::optional<Error> err) {
    run.report["checks"] = run.checks;
    if (err) {
      run.report["error"] = error_json(err->code(), err->what(), run.path);
      result.error_code = static_cast<int>(err->code());
      run.summary << "error " << code_name(err->code()) << " at " << run.path << ": "
                  << err->what() << '\n';
    }
    run.report["status"] = exit_code == 0 ? "ok" : (exit_code == 1 ? "failed" : "usage_error");
    result.exit_code = exit_code;
    result.json = run.report.dump(2) + "\n";
    result.summary = run.summary.str();
    return result;
  };

  auto it = handlers().find(command);
  if (it == handlers().end())
    return finish(2, Error(ErrorCode::SchemaError, "unknown command '" + std::string(command) + "'"));
  try {
    if (options.replay) {
      if (command != "pipeline" && command != "monomialize")
        throw UsageError("--replay applies to pipeline and monomialize only");
      cmd_replay(*options.replay, run);
    } else {
      run.path = "/";
      json in = io::parse(input);
      it->second(in, options, run);
    }
  } catch (const UsageError &e) {
    return finish(2, Error(ErrorCode::SchemaError, e.what()));
  } catch (const Error &e) {
    bool usage = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::SchemaError;
    return finish(usage ? 2 : 1, e);
  } catch (const json::exception &e) {
    return finish(2, Error(ErrorCode::SchemaError, e.what()));
  } catch (const std::exception &e) {
    return finish(1, Error(ErrorCode::Inconsistent, std::string("internal: ") + e.what()));
  }
  run.summary << (run.all_ok ? "all checks passed\n" : "some checks failed\n");
  return finish(run.all_ok ? 0 : 1, std::nullopt);
}

} // namespace gradval
