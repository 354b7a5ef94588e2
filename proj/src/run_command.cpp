#include "temporalis/run_command.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "temporalis/entail.hpp"
#include "temporalis/parser.hpp"
#include "temporalis/semantics.hpp"

namespace temporalis {

namespace {

using nlohmann::json;

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Interval parse_horizon(const std::string &spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw InputError("horizon must look like \"lo:hi\"");
  try {
    Time lo = std::stoll(spec.substr(0, colon));
    Time hi = std::stoll(spec.substr(colon + 1));
    return Interval::closed(lo, hi);
  } catch (const std::logic_error &) {
    throw InputError("horizon endpoints must be integers");
  }
}

json lasso_json(const LassoWord &w, const CompiledUniverse &u) {
  auto letters = [&](const std::vector<Letter> &v) {
    json arr = json::array();
    for (const Letter &l : v) {
      json atoms = json::array();
      for (std::size_t m = 0; m < u.size(); ++m)
        if ((l.a >> m) & 1)
          atoms.push_back(u.universe().at(m)->to_string());
      arr.push_back(atoms);
    }
    return arr;
  };
  return json{{"prefix", letters(w.prefix)}, {"loop", letters(w.loop)}};
}

json window_json(const Window &w, const CompiledUniverse &u) {
  return json::parse(w.debug_json(u));
}

json interpretation_json(const Interpretation &interp) {
  json arr = json::array();
  for (const auto &[atom, set] : interp.atoms())
    for (const Interval &run : set.runs())
      arr.push_back(json{{"atom", atom.to_string()},
                         {"interval", run.to_string()}});
  return arr;
}

json witness_json(const StableWitness &w, const StableChecker &checker) {
  const CompiledUniverse &u = checker.context().universe;
  Interpretation facts =
      checker.witness_to_interpretation(w, checker.validation_horizon());
  return json{{"initial_window", window_json(w.initial_window, u)},
              {"left", lasso_json(w.left, u)},
              {"right", lasso_json(w.right, u)},
              {"exact_tails", w.exact_tails},
              {"reconstructed_facts", interpretation_json(facts)}};
}

struct Inputs {
  Program program;
  Dataset dataset;
};

Inputs load(const RunConfig &config, bool need_data) {
  Inputs in;
  if (config.program_path.empty())
    throw InputError("--program is required");
  in.program = parse_program(slurp(config.program_path));
  if (!config.data_path.empty())
    in.dataset = parse_dataset(slurp(config.data_path));
  else if (need_data)
    in.dataset = Dataset();
  return in;
}

int cmd_check(const RunConfig &config, std::ostream &out) {
  Inputs in = load(config, true);
  StableCheckLimits limits{config.max_states, config.max_candidates, 14};
  std::string mode = config.mode;

  if (mode == "oracle") {
    SearchBox box = default_search_box(in.program, in.dataset);
    if (!config.horizon.empty())
      box.window = parse_horizon(config.horizon);
    OracleLimits ol;
    ol.max_candidates = std::max<unsigned long long>(
        1, static_cast<unsigned long long>(config.max_candidates)) *
        256ull;
    auto models = oracle_stable_models(in.program, in.dataset, box, ol);
    json result{{"exists", !models.empty()},
                {"mode", "oracle"},
                {"models", static_cast<int>(models.size())}};
    out << result.dump(config.json ? -1 : 2) << "\n";
    return 0;
  }

  Program normalized = normalize(in.program).output;
  if (mode == "auto")
    mode = is_forward_propagating(normalized) ? "fp" : "general";
  if (mode == "fp" && !is_forward_propagating(normalized))
    throw InputError("mode fp requires a forward-propagating program");
  if (mode != "fp" && mode != "general")
    throw InputError("unknown mode: " + config.mode);

  StableChecker checker(normalized, in.dataset, limits);
  std::optional<StableWitness> w = mode == "fp"
                                       ? checker.has_stable_model_fp()
                                       : checker.has_stable_model_general();
  json result{{"exists", w.has_value()}, {"mode", mode}};
  if (w)
    result["witness"] = witness_json(*w, checker);
  out << result.dump(config.json ? -1 : 2) << "\n";
  return 0;
}

int cmd_entail(const RunConfig &config, std::ostream &out) {
  Inputs in = load(config, true);
  if (config.fact.empty())
    throw InputError("--fact is required for entail");
  if (config.cautious && config.brave)
    throw InputError("choose one of --brave and --cautious");
  Fact fact = parse_fact(config.fact);
  EntailmentQuery query;
  query.fact_atom = fact.atom;
  query.rho = fact.rho;
  query.mode =
      config.cautious ? EntailmentMode::Cautious : EntailmentMode::Brave;
  StableCheckLimits limits{config.max_states, config.max_candidates, 14};
  bool answer = entails(in.program, in.dataset, query, limits);
  json result{{"entailed", answer},
              {"mode", config.cautious ? "cautious" : "brave"},
              {"fact", fact.atom.to_string() + "@" + fact.rho.to_string()}};
  out << result.dump(config.json ? -1 : 2) << "\n";
  return 0;
}

int cmd_normalize(const RunConfig &config, std::ostream &out) {
  Inputs in = load(config, false);
  NormalizationReport report = normalize(in.program);
  if (config.json) {
    json fresh = json::object();
    for (const auto &[name, info] : report.fresh_predicates)
      fresh[name] = json{{"sources", info.sources}, {"step", info.step}};
    out << json{{"program", report.output.to_string()},
                {"fresh_predicates", fresh}}
               .dump(2)
        << "\n";
  } else {
    out << report.output.to_string();
    std::string sidecar = config.program_path + ".normalize.json";
    std::ofstream side(sidecar);
    if (side) {
      json fresh = json::object();
      for (const auto &[name, info] : report.fresh_predicates)
        fresh[name] = json{{"sources", info.sources}, {"step", info.step}};
      side << fresh.dump(2) << "\n";
    }
  }
  return 0;
}

int cmd_ground(const RunConfig &config, std::ostream &out) {
  Inputs in = load(config, true);
  std::vector<Rule> rules = ground(in.program, in.dataset);
  if (config.json) {
    json arr = json::array();
    for (const Rule &r : rules)
      arr.push_back(r.to_string());
    out << arr.dump(2) << "\n";
  } else {
    for (const Rule &r : rules)
      out << r.to_string() << "\n";
  }
  return 0;
}

int cmd_eval(const RunConfig &config, std::ostream &out) {
  if (config.data_path.empty())
    throw InputError("eval needs --data with an interpretation file");
  if (config.fact.empty())
    throw InputError("--fact is required for eval");
  Dataset interp_facts = parse_dataset(slurp(config.data_path));
  Interpretation interp = canonical_interpretation(interp_facts);
  auto [atom, rho] = parse_metric_fact(config.fact);
  if (!atom->is_ground())
    throw InputError("eval facts must be ground");
  bool holds = models_fact(interp, atom, rho);
  json result{{"holds", holds},
              {"fact", atom->to_string() + "@" + rho.to_string()}};
  out << result.dump(config.json ? -1 : 2) << "\n";
  return 0;
}

int cmd_oracle(const RunConfig &config, std::ostream &out) {
  Inputs in = load(config, true);
  SearchBox box = default_search_box(in.program, in.dataset);
  if (!config.horizon.empty())
    box.window = parse_horizon(config.horizon);
  OracleLimits ol;
  ol.max_candidates = 1ull << 24;
  auto models = oracle_stable_models(in.program, in.dataset, box, ol);
  if (config.json) {
    json arr = json::array();
    for (const Interpretation &m : models)
      arr.push_back(interpretation_json(m));
    out << json{{"models", arr}}.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < models.size(); ++i) {
      out << "% model " << i + 1 << "\n";
      out << models[i].to_string();
    }
    if (models.empty())
      out << "% no stable model\n";
  }
  return 0;
}

} // namespace

int run_command(const RunConfig &config, std::ostream &out,
                std::ostream &err) {
  auto report = [&err](const char *kind, const std::string &message) {
    err << json{{"error", json{{"kind", kind}, {"message", message}}}}.dump()
        << "\n";
  };
  try {
    if (config.command == "check")
      return cmd_check(config, out);
    if (config.command == "entail")
      return cmd_entail(config, out);
    if (config.command == "normalize")
      return cmd_normalize(config, out);
    if (config.command == "ground")
      return cmd_ground(config, out);
    if (config.command == "eval")
      return cmd_eval(config, out);
    if (config.command == "oracle")
      return cmd_oracle(config, out);
    throw InputError("unknown command: " + config.command);
  } catch (const GuardError &e) {
    report("guard", e.what());
    return 3;
  } catch (const InputError &e) {
    report("input", e.what());
    return 2;
  } catch (const InvariantError &e) {
    report("invariant", e.what());
    return 4;
  } catch (const std::exception &e) {
    report("internal", e.what());
    return 4;
  }
}

} // namespace temporalis
