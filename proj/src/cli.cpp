#include "invx/cli.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "invx/critical.hpp"
#include "invx/factorization.hpp"
#include "invx/layers.hpp"
#include "invx/model_io.hpp"

namespace invx {

namespace {

struct CliContext {
  std::string command;
  std::string model_path;
  bool json = false;
  bool serial = false;
  std::string budget_text;
  std::string point_label;
  std::string set_text;
  std::string ideal_path;

  Model model;
  SearchBudget budget{4, 3};
  Json report;
  int exit_code = 0;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

SearchBudget parse_budget(const std::string& text) {
  auto parts = split_commas(text);
  if (parts.size() != 2) throw InputError("--budget expects C,D");
  try {
    return SearchBudget{std::stoll(parts[0]), std::stoi(parts[1])};
  } catch (const std::exception&) {
    throw InputError("--budget expects two integers");
  }
}

PrimeSet parse_prime_set(const CliContext& ctx) {
  if (!ctx.model.tree) throw InputError("--set requires a finite_tree model");
  PrimeSet out;
  if (ctx.set_text.empty()) return out;
  for (const auto& p : split_commas(ctx.set_text)) out.insert(p);
  return out;
}

// Function-backend view of a model. Finite trees expose their maximal space
// as a discrete backend with a cc_full base.
PresentedGroup group_of(const CliContext& ctx) {
  if (ctx.model.group) return *ctx.model.group;
  auto maxima = ctx.model.tree->maximal_points();
  PresentedGroup g;
  g.space = OrdinalSpace{0, static_cast<i64>(maxima.size())};
  g.base = BaseFamily::cc_full;
  return normalize_group(std::move(g));
}

Point parse_cli_point(const CliContext& ctx, const PresentedGroup& g) {
  if (ctx.point_label.empty()) throw InputError("--point is required");
  if (ctx.model.tree) {
    auto maxima = ctx.model.tree->maximal_points();
    for (size_t k = 0; k < maxima.size(); ++k)
      if (maxima[k] == ctx.point_label)
        return Point::index(static_cast<i64>(k));
    throw UnknownPoint(ctx.point_label);
  }
  return parse_point(g.space, ctx.point_label);
}

// --ideal on a function backend parses a descriptor; on a finite tree it
// parses an exponent ideal and evaluates it on the maximal space.
IdealFunction parse_cli_function(const CliContext& ctx,
                                 const PresentedGroup& g) {
  if (ctx.ideal_path.empty()) throw InputError("--ideal FILE is required");
  Json j = load_json_file(ctx.ideal_path);
  if (!ctx.model.tree) return parse_function(g.space, j);
  EIdeal ideal = parse_eideal(ctx.model.tree, j);
  PrimeSet supp = support(ideal);
  for (const auto& p : supp)
    if (!ctx.model.tree->is_maximal(p))
      throw InputError(
          "ideal function on the maximal space needs support in the maximal "
          "ideals; offending prime: " + p);
  std::vector<i64> values;
  for (const auto& m : ctx.model.tree->maximal_points())
    values.push_back(ideal.coord(m));
  return IdealFunction::dense(g.space, std::move(values));
}

Json verdict_json(const PresentedGroup& g, const CritVerdict& v) {
  Json out = Json::object();
  switch (v.kind) {
    case CritVerdict::Kind::non_critical:
      out["verdict"] = "NonCritical";
      break;
    case CritVerdict::Kind::critical_within_budget:
      out["verdict"] = "CriticalWithinBudget";
      break;
    case CritVerdict::Kind::unknown:
      out["verdict"] = "Unknown";
      break;
  }
  out["budget"] = Json::array({v.budget.max_coefficient, v.budget.max_term_depth});
  if (v.certificate) {
    Json cert = Json::object();
    cert["term"] = print_term(v.certificate->term, g.generator_names);
    cert["base_part"] = function_to_json(v.certificate->base_part);
    cert["witness"] = function_to_json(certificate_value(g, *v.certificate));
    out["certificate"] = std::move(cert);
  }
  return out;
}

Json membership_json(const PresentedGroup& g, const MembershipVerdict& v) {
  Json out = Json::object();
  switch (v.kind) {
    case MembershipVerdict::Kind::member:
      out["verdict"] = "Member";
      break;
    case MembershipVerdict::Kind::non_member_within_budget:
      out["verdict"] = "NonMemberWithinBudget";
      break;
    case MembershipVerdict::Kind::unknown:
      out["verdict"] = "Unknown";
      break;
  }
  out["exact"] = v.exact;
  if (v.certificate) {
    Json cert = Json::object();
    cert["term"] = print_term(v.certificate->term, g.generator_names);
    cert["base_part"] = function_to_json(v.certificate->base_part);
    out["certificate"] = std::move(cert);
  }
  return out;
}

Json prime_set_json(const PrimeSet& s) {
  Json out = Json::array();
  for (const auto& p : s) out.push_back(p);
  return out;
}

void cmd_validate(CliContext& ctx) {
  if (ctx.model.tree) {
    const auto& t = *ctx.model.tree;
    ctx.report["kind"] = "finite_tree";
    ctx.report["nodes"] = static_cast<i64>(t.nodes().size());
    ctx.report["dim"] = t.dim();
    Json maxima = Json::array();
    for (const auto& m : t.maximal_points()) maxima.push_back(m);
    ctx.report["maximal"] = std::move(maxima);
    ctx.report["pass"] = true;
    return;
  }
  PresentedGroup g = group_of(ctx);
  ModelValidation v = validate_model(g, ctx.budget);
  ctx.report["pass"] = v.pass;
  ctx.report["issues"] = v.issues;
  ctx.report["sampled_terms"] = v.sampled_terms;
  if (!v.pass) ctx.exit_code = 1;
}

void cmd_factor(CliContext& ctx) {
  PresentedGroup g = group_of(ctx);
  IdealFunction f = parse_cli_function(ctx, g);
  try {
    RadicalFactorization direct = factor_radical(f);
    RadicalFactorization recursive = factor_recursive(f);
    bool same = direct.factors == recursive.factors;
    bool sums = factorization_sum(g.space, direct) == f;
    Json factors = Json::array();
    for (const auto& x : direct.factors)
      factors.push_back(point_set_to_json(g.space, x));
    ctx.report["factors"] = std::move(factors);
    ctx.report["recursive_agrees"] = same;
    ctx.report["sum_matches"] = sums;
    if (!same || !sums) ctx.exit_code = 1;
  } catch (const NotContinuous&) {
    ctx.report["verdict"] = "NotContinuous";
    ctx.exit_code = 1;
  }
}

void cmd_radical(CliContext& ctx) {
  PresentedGroup g = group_of(ctx);
  IdealFunction f = parse_cli_function(ctx, g);
  try {
    IdealFunction r = radical_of(f);
    ctx.report["radical"] = function_to_json(r);
    ctx.report["support"] = point_set_to_json(g.space, f.support());
  } catch (const RadicalNotFinitelyGenerated&) {
    ctx.report["verdict"] = "RadicalNotFinitelyGenerated";
    ctx.exit_code = 1;
  }
}

void cmd_crit(CliContext& ctx, bool bounded) {
  PresentedGroup g = group_of(ctx);
  Point m = parse_cli_point(ctx, g);
  CritVerdict v = bounded ? detect_bounded_critical(g, m, ctx.budget)
                          : detect_critical(g, m, ctx.budget);
  ctx.report["point"] = ctx.point_label;
  ctx.report.update(verdict_json(g, v));
}

Json chain_json(const CritSequenceResult& seq) {
  Json chain = Json::array();
  for (size_t a = 0; a < seq.chain.size(); ++a) {
    const auto& stage = seq.chain[a];
    Json entry = Json::object();
    const MaxSpace& coords =
        a == 0 ? stage.group.space : seq.chain[a - 1].group.space;
    entry["set"] = point_set_to_json(coords, stage.set);
    entry["label"] = set_label(coords, stage.set);
    chain.push_back(std::move(entry));
  }
  return chain;
}

void cmd_crit_seq(CliContext& ctx) {
  PresentedGroup g = group_of(ctx);
  CritSequenceResult seq = crit_sequence(g, ctx.budget);
  switch (seq.status) {
    case CritSequenceResult::Status::completed:
      ctx.report["status"] = "Completed";
      ctx.report["sp_rank"] = *seq.sp_rank;
      break;
    case CritSequenceResult::Status::fixpoint_violation:
      ctx.report["status"] = "ModelViolatesNonCriticality";
      ctx.exit_code = 1;
      break;
    case CritSequenceResult::Status::unknown:
      ctx.report["status"] = "Unknown";
      break;
  }
  ctx.report["chain"] = chain_json(seq);
}

void cmd_sp_rank(CliContext& ctx) {
  PresentedGroup g = group_of(ctx);
  if (!ctx.point_label.empty()) {
    Point m = parse_cli_point(ctx, g);
    auto h = sp_height(g, m, ctx.budget);
    ctx.report["point"] = ctx.point_label;
    if (h)
      ctx.report["sp_height"] = *h;
    else
      ctx.report["sp_height"] = "Unknown";
    return;
  }
  cmd_crit_seq(ctx);
}

void cmd_decompose(CliContext& ctx) {
  PresentedGroup g = group_of(ctx);
  IdealFunction f = parse_cli_function(ctx, g);
  ctx.report["membership"] = membership_json(g, group_membership(g, f, ctx.budget));
  auto components = decompose_inv(g, f, ctx.budget);
  Json comps = Json::array();
  for (const auto& c : components) {
    Json entry = Json::object();
    entry["layer"] = c.layer;
    entry["component"] = function_to_json(c.component);
    entry["zero"] = c.component.is_zero();
    comps.push_back(std::move(entry));
  }
  ctx.report["components"] = std::move(comps);
}

void cmd_density(CliContext& ctx) {
  PresentedGroup g = group_of(ctx);
  if (g.samples.empty())
    throw InputError("density check needs a sample list in the model");
  DensityReport rep = density_check(g, ctx.budget, g.samples);
  ctx.report["pass"] = rep.pass;
  Json samples = Json::array();
  for (const auto& s : rep.samples) {
    Json entry = Json::object();
    entry["sample"] = point_set_to_json(g.space, s.sample);
    entry["meets_noncritical"] = s.meets_noncritical;
    if (s.witness) entry["witness"] = point_label(g.space, *s.witness);
    samples.push_back(std::move(entry));
  }
  ctx.report["samples"] = std::move(samples);
  if (!rep.pass) ctx.exit_code = 1;
}

void cmd_layers(CliContext& ctx) {
  if (!ctx.model.tree) throw InputError("layers requires a finite_tree model");
  LayerSequence seq = layer_sequence(*ctx.model.tree);
  Json layers = Json::array();
  Json counts = Json::array();
  for (const auto& y : seq.layers) {
    layers.push_back(prime_set_json(y));
    counts.push_back(static_cast<i64>(y.size()));
  }
  ctx.report["layer_sizes"] = std::move(counts);
  ctx.report["layers"] = std::move(layers);
}

void cmd_csd(CliContext& ctx) {
  if (!ctx.model.tree) throw InputError("csd requires a finite_tree model");
  CsdDecomposition d = csd_decompose(ctx.model.tree);
  Json ranks = Json::array();
  Json layers = Json::array();
  for (const auto& l : d.layers) {
    ranks.push_back(l.rank);
    Json entry = Json::object();
    entry["peeled"] = prime_set_json(l.peeled);
    entry["rank"] = l.rank;
    entry["spectrum_size"] = l.transformed_size;
    layers.push_back(std::move(entry));
  }
  ctx.report["layer_ranks"] = std::move(ranks);
  ctx.report["total_rank"] = d.total_rank;
  ctx.report["layers"] = std::move(layers);
}

void cmd_nagata(CliContext& ctx) {
  if (!ctx.model.tree) throw InputError("nagata requires a finite_tree model");
  PrimeSet x = parse_prime_set(ctx);
  NagataTransform t = nagata_transform(ctx.model.tree, x);
  Json nodes = Json::array();
  for (const auto& n : t.spectrum->nodes()) nodes.push_back(n);
  ctx.report["nodes"] = std::move(nodes);
  Json maxima = Json::array();
  for (const auto& m : t.spectrum->maximal_points()) maxima.push_back(m);
  ctx.report["maximal"] = std::move(maxima);
}

void cmd_quotient_check(CliContext& ctx) {
  if (!ctx.model.tree)
    throw InputError("quotient-check requires a finite_tree model");
  PrimeSet x = parse_prime_set(ctx);
  QuotientReport rep = quotient_check(
      ctx.model.tree, x, 1,
      ctx.serial ? ScanPolicy::serial : ScanPolicy::automatic);
  ctx.report["pass"] = rep.pass;
  ctx.report["rank_inv_x"] = rep.rank_inv_x;
  ctx.report["rank_omega"] = rep.rank_omega;
  ctx.report["total_rank"] = rep.total_rank;
  ctx.report["enumerated"] = rep.enumerated;
  ctx.report["issues"] = rep.issues;
  if (!rep.pass) ctx.exit_code = 1;
}

void cmd_jl(CliContext& ctx) {
  if (!ctx.model.tree) throw InputError("jl requires a finite_tree model");
  if (ctx.ideal_path.empty()) throw InputError("--ideal FILE is required");
  EIdeal i = parse_eideal(ctx.model.tree, load_json_file(ctx.ideal_path));
  JlDecomposition d = jl_decompose(i);
  ctx.report["J"] = eideal_to_json(d.j);
  ctx.report["L"] = eideal_to_json(d.l);
  EIdeal recomposed = product(d.j, inverse_of(d.l));
  ctx.report["round_trip"] = recomposed.coords == i.coords;
  ctx.report["J_integral"] = is_integral(d.j);
  ctx.report["L_integral"] = is_integral(d.l);
  if (!(recomposed.coords == i.coords)) ctx.exit_code = 1;
}

void cmd_int_v(CliContext& ctx) {
  if (!ctx.model.group || !std::holds_alternative<BallSpace>(ctx.model.group->space))
    throw InputError("int-v requires a ball model");
  const auto& b = std::get<BallSpace>(ctx.model.group->space);
  IntVModel m = int_v_model(b.p, b.depth);
  ctx.report["layers"] = m.layer_descriptions;
  ctx.report["p"] = m.unitary_space.p;
  ctx.report["depth"] = m.unitary_space.depth;
  ctx.report["unitary_rank"] = m.unitary_rank;
  ctx.report["nonunitary"] = m.nonunitary_label;
}

void dispatch(CliContext& ctx) {
  if (ctx.command == "validate") return cmd_validate(ctx);
  if (ctx.command == "factor") return cmd_factor(ctx);
  if (ctx.command == "radical") return cmd_radical(ctx);
  if (ctx.command == "crit") return cmd_crit(ctx, false);
  if (ctx.command == "bcrit") return cmd_crit(ctx, true);
  if (ctx.command == "crit-seq") return cmd_crit_seq(ctx);
  if (ctx.command == "sp-rank") return cmd_sp_rank(ctx);
  if (ctx.command == "decompose") return cmd_decompose(ctx);
  if (ctx.command == "layers") return cmd_layers(ctx);
  if (ctx.command == "csd") return cmd_csd(ctx);
  if (ctx.command == "nagata") return cmd_nagata(ctx);
  if (ctx.command == "quotient-check") return cmd_quotient_check(ctx);
  if (ctx.command == "jl") return cmd_jl(ctx);
  if (ctx.command == "int-v") return cmd_int_v(ctx);
  if (ctx.command == "density") return cmd_density(ctx);
  throw InputError("unknown command: " + ctx.command);
}

void print_human(const Json& j, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      os << pad << key << ":\n";
      print_human(value, os, indent + 2);
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
      os << pad << key << ":\n";
      for (const auto& item : value) {
        os << pad << "  -\n";
        print_human(item, os, indent + 4);
      }
    } else {
      os << pad << key << ": " << value.dump() << "\n";
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"radical factorization and invertible-ideal groups on "
               "computable spectra"};
  app.require_subcommand(1);

  CliContext ctx;
  std::vector<CLI::App*> subs;
  for (const char* name :
       {"validate", "factor", "radical", "crit", "bcrit", "crit-seq",
        "sp-rank", "decompose", "layers", "csd", "nagata", "quotient-check",
        "jl", "int-v", "density"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("model", ctx.model_path, "model file (JSON)")->required();
    sub->add_flag("--json", ctx.json, "machine-readable output");
    sub->add_flag("--serial", ctx.serial, "disable the parallel scan kernels");
    sub->add_option("--budget", ctx.budget_text, "search budget C,D");
    sub->add_option("--point", ctx.point_label, "point label");
    sub->add_option("--set", ctx.set_text, "comma-separated prime labels");
    sub->add_option("--ideal", ctx.ideal_path, "ideal/function file (JSON)");
    subs.push_back(sub);
  }

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help() << std::endl;
      return 0;
    }
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  for (auto* sub : subs)
    if (sub->parsed()) ctx.command = sub->get_name();

  auto start = std::chrono::steady_clock::now();
  try {
    if (ctx.serial) set_default_scan_policy(ScanPolicy::serial);
    if (!ctx.budget_text.empty()) ctx.budget = parse_budget(ctx.budget_text);
    ctx.model = load_model(ctx.model_path);
    ctx.report["command"] = ctx.command;
    ctx.report["model"] = ctx.model_path;
    ctx.report["budget"] =
        Json::array({ctx.budget.max_coefficient, ctx.budget.max_term_depth});
    dispatch(ctx);
  } catch (const VerdictError& e) {
    std::cerr << "verdict: " << e.what() << std::endl;
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << std::endl;
    return 2;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();

  if (ctx.json) {
    ctx.report["timing_ms"] = elapsed;
    std::cout << ctx.report.dump(2) << std::endl;
  } else {
    print_human(ctx.report, std::cout);
    std::cout << "elapsed: " << elapsed << " ms" << std::endl;
  }
  return ctx.exit_code;
}

}  // namespace invx
