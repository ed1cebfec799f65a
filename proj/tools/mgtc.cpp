// Command-line surface for the mini-gringo toolchain: term evaluation,
// grounding, stable models, io-models, first-order translation, completion,
// tightness analysis and the bounded theorem verifiers.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mgtc/check.hpp"
#include "mgtc/errors.hpp"
#include "mgtc/json_io.hpp"
#include "mgtc/parser.hpp"
#include "mgtc/values.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace mgtc;
using nlohmann::json;

struct Options {
  std::string format = "text";  // text | json | dot
  std::optional<long long> int_min;
  std::optional<long long> int_max;
  long long margin = 1;
  std::vector<std::string> extra_consts;
  std::size_t limit = 22;       // stable-model enumeration atoms
  std::size_t so_limit = 16;    // private-atom bits for witness search
  unsigned seed = 0;            // embedded in reports for reproducibility
  bool timings = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Universe apply_overrides(Universe u, const Options& opt) {
  std::set<std::string> symbolics = u.symbolics();
  for (const std::string& c : opt.extra_consts) symbolics.insert(c);
  BigInt lo = opt.int_min ? BigInt(*opt.int_min) : u.int_min();
  BigInt hi = opt.int_max ? BigInt(*opt.int_max) : u.int_max();
  return Universe(std::move(symbolics), std::move(lo), std::move(hi));
}

struct Loaded {
  ParsedProgram parsed;
  IoProgram io;
  Input input;
  Universe universe;
};

Loaded load(const std::string& program_path, const std::string& input_path,
            const Options& opt) {
  ParsedProgram parsed = parse_program(read_file(program_path), program_path);
  IoProgram io = parsed.to_io();
  Input input = input_path.empty()
                    ? Input::empty(io)
                    : parse_input(read_file(input_path), io, input_path);
  Universe universe = apply_overrides(default_universe(io, input, opt.margin), opt);
  return {std::move(parsed), std::move(io), std::move(input), std::move(universe)};
}

StableLimits stable_limits(const Options& opt) { return {opt.limit}; }
SoLimits so_limits(const Options& opt) { return {opt.so_limit}; }

json envelope(const Options& opt, const Universe& universe, json report,
              std::chrono::steady_clock::duration elapsed) {
  json out{{"tool", "mgtc"},
           {"version", kVersion},
           {"seed", opt.seed},
           {"universe", to_json(universe)},
           {"report", std::move(report)}};
  if (opt.timings) {
    out["timings"] = json{
        {"total_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()}};
  }
  return out;
}

void print_text_header(const Universe& universe) {
  std::cout << "% mgtc " << kVersion << "\n";
  std::cout << "% universe: " << universe.to_string() << "\n";
}

int run_eval(const std::string& term_text, const Options& opt) {
  Term t = parse_term(term_text, "<arg>");
  ValueSet values = eval_term(t);
  if (opt.format == "json") {
    std::cout << json{{"term", term_text}, {"values", to_json(values)}}.dump(2)
              << "\n";
    return 0;
  }
  std::cout << "{";
  bool first = true;
  for (const PrecomputedTerm& v : values) {
    if (!first) std::cout << ",";
    std::cout << v.to_string();
    first = false;
  }
  std::cout << "}\n";
  return 0;
}

int run_parse(const std::string& path, const Options& opt) {
  ParsedProgram parsed = parse_program(read_file(path), path);
  (void)parsed.to_io();  // validate the declarations
  if (opt.format == "json") {
    json decls{{"placeholders", json::array()},
               {"inputs", json::array()},
               {"outputs", json::array()}};
    for (const std::string& c : parsed.placeholders) decls["placeholders"].push_back(c);
    for (const PredSym& p : parsed.inputs) decls["inputs"].push_back(p.to_string());
    for (const PredSym& p : parsed.outputs) decls["outputs"].push_back(p.to_string());
    std::cout << json{{"version", kVersion},
                      {"program", to_json(parsed.program)},
                      {"declarations", std::move(decls)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << parsed.program.to_string();
  }
  return 0;
}

int run_ground(const std::string& path, const std::string& input_path,
               const Options& opt) {
  Loaded loaded = load(path, input_path, opt);
  Program grounded = apply_valuation(loaded.io.program(), loaded.input.valuation());
  std::vector<PropFormula> fs = tau_program(grounded, loaded.universe);
  for (const GroundAtom& a : loaded.input.atoms()) fs.push_back(PropFormula::atom(a));
  if (opt.format == "json") {
    json list = json::array();
    for (const PropFormula& f : fs)
      list.push_back(json{{"text", f.to_string()}, {"formula", to_json(f)}});
    std::cout << json{{"version", kVersion},
                      {"universe", to_json(loaded.universe)},
                      {"formulas", std::move(list)}}
                     .dump(2)
              << "\n";
  } else {
    print_text_header(loaded.universe);
    for (const PropFormula& f : fs) std::cout << f.to_string() << "\n";
  }
  return 0;
}

void print_models(const std::vector<AtomSet>& models) {
  if (models.empty()) {
    std::cout << "no models\n";
    return;
  }
  for (std::size_t i = 0; i < models.size(); ++i) {
    std::cout << "model " << (i + 1) << ": {";
    bool first = true;
    for (const GroundAtom& a : models[i]) {
      if (!first) std::cout << ", ";
      std::cout << a.to_string();
      first = false;
    }
    std::cout << "}\n";
  }
}

int run_stable(const std::string& path, const std::string& input_path,
               const Options& opt) {
  Loaded loaded = load(path, input_path, opt);
  Program grounded = apply_valuation(loaded.io.program(), loaded.input.valuation());
  std::vector<PropFormula> fs = tau_program(grounded, loaded.universe);
  for (const GroundAtom& a : loaded.input.atoms()) fs.push_back(PropFormula::atom(a));
  AtomSet base;
  for (const PropFormula& f : fs) f.collect_atoms(base);
  std::vector<AtomSet> models = stable_models(fs, base, stable_limits(opt));
  if (opt.format == "json") {
    json list = json::array();
    for (const AtomSet& m : models) list.push_back(to_json(m));
    std::cout << json{{"version", kVersion},
                      {"universe", to_json(loaded.universe)},
                      {"stable_models", std::move(list)}}
                     .dump(2)
              << "\n";
  } else {
    print_text_header(loaded.universe);
    print_models(models);
  }
  return 0;
}

int run_iomodels(const std::string& path, const std::string& input_path,
                 const Options& opt) {
  Loaded loaded = load(path, input_path, opt);
  std::vector<AtomSet> models =
      io_models(loaded.io, loaded.input, loaded.universe, stable_limits(opt));
  if (opt.format == "json") {
    json list = json::array();
    for (const AtomSet& m : models) list.push_back(to_json(m));
    std::cout << json{{"version", kVersion},
                      {"universe", to_json(loaded.universe)},
                      {"io_models", std::move(list)}}
                     .dump(2)
              << "\n";
  } else {
    print_text_header(loaded.universe);
    print_models(models);
  }
  return 0;
}

int run_translate(const std::string& path, const Options& opt) {
  ParsedProgram parsed = parse_program(read_file(path), path);
  CompletableSet gamma = tau_star(parsed.program);
  if (opt.format == "json") {
    json list = json::array();
    for (const FoFormula& s : gamma.sentences())
      list.push_back(json{{"text", s.to_string()}, {"formula", to_json(s)}});
    json intensional = json::array();
    for (const PredSym& p : gamma.intensional())
      intensional.push_back(p.to_string());
    std::cout << json{{"version", kVersion},
                      {"sentences", std::move(list)},
                      {"intensional", std::move(intensional)}}
                     .dump(2)
              << "\n";
  } else {
    for (const FoFormula& s : gamma.sentences())
      std::cout << s.to_string() << "\n";
  }
  return 0;
}

int run_complete(const std::string& path, const Options& opt) {
  ParsedProgram parsed = parse_program(read_file(path), path);
  SoSentence completion = complete_io(parsed.to_io());
  if (opt.format == "json") {
    std::cout << json{{"version", kVersion},
                      {"completion", to_json(completion)},
                      {"text", completion.to_string()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << completion.to_string() << "\n";
  }
  return 0;
}

int run_tight(const std::string& path, const Options& opt) {
  ParsedProgram parsed = parse_program(read_file(path), path);
  PredDepGraph graph = pred_graph(parsed.program);
  auto cycle = find_pred_cycle(graph);
  if (opt.format == "dot") {
    std::cout << graph.to_dot();
    return cycle ? 1 : 0;
  }
  if (opt.format == "json") {
    json out{{"version", kVersion}, {"tight", !cycle.has_value()}};
    if (cycle) {
      json path_json = json::array();
      for (const PredSym& p : *cycle) path_json.push_back(p.to_string());
      out["cycle"] = std::move(path_json);
    }
    std::cout << out.dump(2) << "\n";
    return cycle ? 1 : 0;
  }
  if (!cycle) {
    std::cout << "TIGHT\n";
    return 0;
  }
  std::cout << "NOT TIGHT: cycle";
  for (const PredSym& p : *cycle) std::cout << " " << p.to_string() << " ->";
  std::cout << " " << cycle->front().to_string() << "\n";
  return 1;
}

int run_locally_tight(const std::string& path, const std::string& input_path,
                      const Options& opt) {
  Loaded loaded = load(path, input_path, opt);
  if (opt.format == "dot") {
    std::cout << atom_graph(loaded.io, loaded.input, loaded.universe).to_dot();
    return 0;
  }
  LocalTightness verdict =
      is_locally_tight(loaded.io, loaded.input, loaded.universe);
  if (opt.format == "json") {
    std::cout << json{{"version", kVersion},
                      {"universe", to_json(loaded.universe)},
                      {"result", to_json(verdict)}}
                     .dump(2)
              << "\n";
  } else {
    print_text_header(loaded.universe);
    std::cout << verdict.to_string() << "\n";
  }
  return verdict.locally_tight() ? 0 : 1;
}

int run_verify_thm1(const std::string& path, const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  Loaded loaded = load(path, "", opt);
  Theorem1Report report =
      verify_theorem1(loaded.io.program(), loaded.universe, stable_limits(opt));
  std::cout << envelope(opt, loaded.universe, to_json(report),
                        std::chrono::steady_clock::now() - start)
                   .dump(2)
            << "\n";
  return report.matches ? 0 : 1;
}

int run_verify_thm2(const std::string& path, const std::string& input_path,
                    const std::string& model_path, const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  Loaded loaded = load(path, input_path, opt);
  AtomSet public_atoms = parse_atoms(read_file(model_path), model_path);
  Theorem2Report report =
      verify_theorem2(loaded.io, loaded.input, public_atoms, loaded.universe,
                      stable_limits(opt), so_limits(opt));
  std::cout << envelope(opt, loaded.universe, to_json(report),
                        std::chrono::steady_clock::now() - start)
                   .dump(2)
            << "\n";
  if (!report.applicable) return 2;
  return report.equivalent ? 0 : 1;
}

int run_verify_main_lemma(const std::string& theory_path,
                          const std::string& model_path, const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  ParsedTheory theory = parse_theory(read_file(theory_path), theory_path);
  CompletableSet gamma(theory.sentences, theory.intensional);
  AtomSet atoms = model_path.empty() ? AtomSet{}
                                     : parse_atoms(read_file(model_path), model_path);
  // Derive a universe from the constants of the theory and the model.
  std::set<std::string> symbolics;
  std::vector<BigInt> ints;
  for (const GroundAtom& a : atoms)
    for (const PrecomputedTerm& arg : a.args) {
      if (arg.is_symbolic())
        symbolics.insert(arg.symbol());
      else
        ints.push_back(arg.number());
    }
  std::function<void(const FoTerm&)> scan_term = [&](const FoTerm& t) {
    switch (t.kind()) {
      case FoTerm::Kind::Const:
        if (t.value().is_symbolic())
          symbolics.insert(t.value().symbol());
        else
          ints.push_back(t.value().number());
        return;
      case FoTerm::Kind::Var:
        return;
      case FoTerm::Kind::Abs:
        scan_term(t.inner());
        return;
      case FoTerm::Kind::Bin:
        scan_term(t.left());
        scan_term(t.right());
        return;
    }
  };
  std::function<void(const FoFormula&)> scan = [&](const FoFormula& f) {
    switch (f.kind()) {
      case FoFormula::Kind::Pred:
        for (const FoTerm& t : f.pred_args()) scan_term(t);
        return;
      case FoFormula::Kind::Cmp:
        scan_term(f.left());
        scan_term(f.right());
        return;
      case FoFormula::Kind::Bot:
        return;
      case FoFormula::Kind::Forall:
      case FoFormula::Kind::Exists:
        scan(f.quant_body());
        return;
      default:
        for (const FoFormula& m : f.members()) scan(m);
        return;
    }
  };
  for (const FoFormula& sentence : theory.sentences) scan(sentence);
  BigInt lo(0), hi(1);
  if (!ints.empty()) {
    lo = *std::min_element(ints.begin(), ints.end()) - BigInt(opt.margin);
    hi = *std::max_element(ints.begin(), ints.end()) + BigInt(opt.margin);
  }
  Universe universe = apply_overrides(Universe(symbolics, lo, hi), opt);
  MainLemmaReport report = verify_main_lemma(gamma, atoms, universe);
  std::cout << envelope(opt, universe, to_json(report),
                        std::chrono::steady_clock::now() - start)
                   .dump(2)
            << "\n";
  if (!report.hypothesis_holds) return 2;
  return *report.equivalence_holds ? 0 : 1;
}

int run_verify_equiv(const std::string& left_path, const std::string& right_path,
                     const std::string& assume_path, const std::string& domain_path,
                     const std::string& input_path, const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  ParsedProgram left_parsed = parse_program(read_file(left_path), left_path);
  ParsedProgram right_parsed = parse_program(read_file(right_path), right_path);
  IoProgram left = left_parsed.to_io();
  IoProgram right = right_parsed.to_io();
  FoFormula assumption = assume_path.empty()
                             ? FoFormula::top()
                             : parse_formula(read_file(assume_path), assume_path);
  InputDomain domain;
  if (!domain_path.empty()) {
    domain = domain_from_json(json::parse(read_file(domain_path)));
  } else if (!input_path.empty()) {
    Input input = parse_input(read_file(input_path), left, input_path);
    domain.valuations.push_back(input.valuation());
    domain.atom_base.assign(input.atoms().begin(), input.atoms().end());
  } else {
    domain.valuations.push_back({});
  }
  // A joint universe covering both programs and the whole domain.  The
  // merged map only feeds the constant scan, so its keys are made unique.
  AtomSet all_atoms(domain.atom_base.begin(), domain.atom_base.end());
  Valuation merged;
  int counter = 0;
  for (const Valuation& v : domain.valuations)
    for (const auto& [name, value] : v)
      merged.emplace(name + "#" + std::to_string(counter++), value);
  Universe u_left = default_universe(left.program(), merged, all_atoms,
                                     left.placeholders(), opt.margin);
  Universe u_right = default_universe(right.program(), merged, all_atoms,
                                      right.placeholders(), opt.margin);
  std::set<std::string> symbolics = u_left.symbolics();
  symbolics.insert(u_right.symbolics().begin(), u_right.symbolics().end());
  Universe universe = apply_overrides(
      Universe(symbolics, std::min(u_left.int_min(), u_right.int_min()),
               std::max(u_left.int_max(), u_right.int_max())),
      opt);
  EquivalenceReport report = check_equivalence(left, right, assumption, domain,
                                               universe, stable_limits(opt));
  std::cout << envelope(opt, universe, to_json(report),
                        std::chrono::steady_clock::now() - start)
                   .dump(2)
            << "\n";
  if (!report.equivalent) return 1;
  return report.inapplicable.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mini-gringo toolchain: translations, stable models, completion, "
               "tightness and bounded verification"};
  app.set_version_flag("--version", std::string("mgtc ") + kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  Options opt;
  app.add_option("--format", opt.format, "Output format: text, json or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--int-min", opt.int_min, "Universe integer lower bound override");
  app.add_option("--int-max", opt.int_max, "Universe integer upper bound override");
  app.add_option("--margin", opt.margin, "Integer padding around occurring values")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--const", opt.extra_consts,
                 "Additional symbolic constants for the universe")
      ->delimiter(',');
  app.add_option("--limit", opt.limit, "Stable-model enumeration limit (atoms)")
      ->check(CLI::PositiveNumber);
  app.add_option("--so-limit", opt.so_limit,
                 "Witness enumeration limit (private atoms)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed recorded in reports");
  app.add_flag("--timings", opt.timings, "Include wall-clock timings in reports");

  std::string term_text, file, input_path, model_path, left_path, right_path,
      assume_path, domain_path;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a ground term");
  eval->add_option("term", term_text, "Ground term, e.g. \"7/2\"")->required();

  CLI::App* parse = app.add_subcommand("parse", "Parse a program file");
  parse->add_option("file", file, "Program file (.mg)")->required();

  CLI::App* ground = app.add_subcommand("ground", "Propositional translation");
  ground->add_option("file", file, "Program file (.mg)")->required();
  ground->add_option("--input", input_path, "Input file (.in)");

  CLI::App* stable = app.add_subcommand("stable", "Stable models");
  stable->add_option("file", file, "Program file (.mg)")->required();
  stable->add_option("--input", input_path, "Input file (.in)");

  CLI::App* iomodels = app.add_subcommand("iomodels", "Io-models for an input");
  iomodels->add_option("file", file, "Program file (.mg)")->required();
  iomodels->add_option("--input", input_path, "Input file (.in)")->required();

  CLI::App* translate = app.add_subcommand("translate", "First-order translation");
  translate->add_option("file", file, "Program file (.mg)")->required();

  CLI::App* complete = app.add_subcommand("complete", "Completion of an io-program");
  complete->add_option("file", file, "Program file (.mg)")->required();

  CLI::App* tight = app.add_subcommand("tight", "Tightness check");
  tight->add_option("file", file, "Program file (.mg)")->required();

  CLI::App* locally_tight =
      app.add_subcommand("locally-tight", "Local tightness for an input");
  locally_tight->add_option("file", file, "Program file (.mg)")->required();
  locally_tight->add_option("--input", input_path, "Input file (.in)");

  CLI::App* verify = app.add_subcommand("verify", "Bounded theorem verifiers");
  verify->require_subcommand(1);

  CLI::App* thm1 = verify->add_subcommand(
      "thm1", "Stable models via both translations must agree");
  thm1->add_option("file", file, "Program file (.mg)")->required();

  CLI::App* thm2 = verify->add_subcommand(
      "thm2", "Io-model and completion characterizations must agree");
  thm2->add_option("file", file, "Program file (.mg)")->required();
  thm2->add_option("--input", input_path, "Input file (.in)")->required();
  thm2->add_option("--model", model_path, "Public atom set (.atoms)")->required();

  CLI::App* main_lemma = verify->add_subcommand(
      "main-lemma", "Stable vs completion for a completable theory");
  main_lemma->add_option("file", file, "Theory file (.fo)")->required();
  main_lemma->add_option("--model", model_path, "Atom set (.atoms)");

  CLI::App* equiv = verify->add_subcommand(
      "equiv", "Io-model equivalence of two programs on a finite domain");
  equiv->add_option("left", left_path, "First program (.mg)")->required();
  equiv->add_option("right", right_path, "Second program (.mg)")->required();
  equiv->add_option("--assume", assume_path, "Assumption formula (.fo)");
  equiv->add_option("--domain", domain_path, "Domain description (.json)");
  equiv->add_option("--input-base", input_path,
                    "Input file used as valuation + atom base");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return run_eval(term_text, opt);
    if (*parse) return run_parse(file, opt);
    if (*ground) return run_ground(file, input_path, opt);
    if (*stable) return run_stable(file, input_path, opt);
    if (*iomodels) return run_iomodels(file, input_path, opt);
    if (*translate) return run_translate(file, opt);
    if (*complete) return run_complete(file, opt);
    if (*tight) return run_tight(file, opt);
    if (*locally_tight) return run_locally_tight(file, input_path, opt);
    if (*verify) {
      if (*thm1) return run_verify_thm1(file, opt);
      if (*thm2) return run_verify_thm2(file, input_path, model_path, opt);
      if (*main_lemma) return run_verify_main_lemma(file, model_path, opt);
      if (*equiv)
        return run_verify_equiv(left_path, right_path, assume_path, domain_path,
                                input_path, opt);
    }
  } catch (const LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
