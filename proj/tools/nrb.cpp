#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nrb/errors.hpp"
#include "nrb/model.hpp"
#include "nrb/parser.hpp"
#include "nrb/printer.hpp"
#include "nrb/proof.hpp"
#include "nrb/scope.hpp"
#include "nrb/wp.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Exit codes: 0 ok, 1 fail/rejected, 2 parse/scope error, 3 wp verify
// mismatch, 4 not deterministic, 5 size limit exceeded.
enum ExitCode {
  kOk = 0,
  kFail = 1,
  kParseError = 2,
  kVerifyMismatch = 3,
  kNotDeterministic = 4,
  kSizeLimit = 5,
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nrb::NrbError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw nrb::NrbError("cannot write file: " + path);
  out << text;
}

ordered_json state_json(const nrb::StateSpace& space, nrb::State s) {
  ordered_json out = ordered_json::object();
  for (int i = 0; i < space.var_count(); ++i)
    out[space.var(i).name] = space.value(s, i);
  return out;
}

std::string colour_str(const nrb::Colour& c) {
  switch (c.kind) {
    case nrb::Colour::Kind::N: return "N";
    case nrb::Colour::Kind::R: return "R";
    case nrb::Colour::Kind::B: return "B";
    case nrb::Colour::Kind::G: return "G:" + c.tag;
    case nrb::Colour::Kind::E: return "E:" + c.tag;
    default: return "?";
  }
}

ordered_json transition_json(const nrb::StateSpace& space,
                             const nrb::Transition& t) {
  return {{"from", state_json(space, t.from)},
          {"colour", colour_str(t.colour)},
          {"to", state_json(space, t.to)}};
}

struct Options {
  bool verify = false;
  bool lax_conseq = false;
  std::string dot_path;
  std::string json_path;
  std::string suite_dir;
  long long max_states = nrb::kDefaultStateCap;
  int max_counterexamples = 5;
  std::vector<std::string> files;
};

struct Outcome {
  std::string status = "ok";
  int exit_code = kOk;
  ordered_json details = ordered_json::object();
};

struct Loaded {
  nrb::Program program;
  nrb::StateSpace space;
};

Loaded load_program(const std::string& path, long long cap) {
  nrb::Program p = nrb::parse_program(read_file(path));
  std::vector<nrb::Diagnostic> ds = scope_check(p);
  if (!ds.empty()) {
    std::string msg;
    for (const nrb::Diagnostic& d : ds) {
      if (!msg.empty()) msg += "; ";
      msg += d.message;
    }
    throw nrb::NrbError("scope error: " + msg);
  }
  nrb::StateSpace space = nrb::StateSpace::from_program(p, cap);
  return {std::move(p), std::move(space)};
}

nrb::Judgement load_judgement(const std::string& path,
                              const nrb::Program& prog) {
  nrb::Judgement j = nrb::parse_judgement(read_file(path));
  if (!j.stmt) j.stmt = prog.main;
  return j;
}

ordered_json verdict_json(const nrb::Verdict& v, const nrb::StateSpace& space,
                          int max_cex) {
  ordered_json cex = ordered_json::array();
  int shown = 0;
  for (const nrb::Transition& t : v.counterexamples) {
    if (shown++ >= max_cex) break;
    cex.push_back(transition_json(space, t));
  }
  return {{"holds", v.holds},
          {"counterexample_count", v.counterexamples.size()},
          {"counterexamples", cex}};
}

Outcome run_check_one(const Loaded& l, const std::string& judgement_file,
                      const Options& opt) {
  Outcome out;
  nrb::Judgement j = load_judgement(judgement_file, l.program);
  nrb::Verdict v = check_triple(j, l.space, l.program.subs);
  out.details["judgement"] = to_string(j);
  out.details["verdict"] = verdict_json(v, l.space, opt.max_counterexamples);
  if (!v.holds) {
    out.status = "fail";
    out.exit_code = kFail;
  }
  return out;
}

Outcome run_check(const Options& opt) {
  Loaded l = load_program(opt.files.at(0), opt.max_states);
  if (!opt.suite_dir.empty()) {
    Outcome agg;
    ordered_json reports = ordered_json::array();
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(opt.suite_dir))
      if (e.is_regular_file()) paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    for (const std::string& p : paths) {
      Outcome one = run_check_one(l, p, opt);
      one.details["file"] = p;
      one.details["status"] = one.status;
      reports.push_back(one.details);
      if (one.exit_code != kOk) {
        agg.status = "fail";
        agg.exit_code = kFail;
      }
    }
    agg.details["suite"] = reports;
    return agg;
  }
  if (opt.files.size() < 2)
    throw nrb::NrbError("check needs a program file and a judgement file");
  return run_check_one(l, opt.files.at(1), opt);
}

Outcome run_wp(const Options& opt) {
  Loaded l = load_program(opt.files.at(0), opt.max_states);
  if (opt.files.size() < 2)
    throw nrb::NrbError("wp needs a program file and a postcondition");
  std::string text = opt.files.at(1);
  if (fs::exists(text)) text = read_file(text);
  nrb::ModalPtr q = nrb::parse_formula(text);
  nrb::Predicate p =
      nrb::wp(l.program.main, q, nrb::GotoEnv{}, l.space, l.program.subs);
  Outcome out;
  out.details["post"] = to_string(q);
  out.details["rendering"] = to_string(nrb::render(p.states, l.space));
  out.details["structural"] = to_string(p.rendering);
  out.details["state_count"] = p.states.size();
  if (opt.verify) {
    bool ok = nrb::verify_wp(l.program.main, q, nrb::GotoEnv{}, l.space,
                             l.program.subs);
    out.details["verified"] = ok;
    if (!ok) {
      out.status = "error";
      out.exit_code = kVerifyMismatch;
    }
  }
  return out;
}

Outcome run_prove(const Options& opt) {
  Loaded l = load_program(opt.files.at(0), opt.max_states);
  if (opt.files.size() < 2)
    throw nrb::NrbError("prove needs a program file and a judgement file");
  nrb::Judgement j = load_judgement(opt.files.at(1), l.program);
  nrb::ProofNode proof = nrb::generate_proof(j, l.space, l.program.subs);
  nrb::KernelVerdict kv = nrb::check_proof(proof, l.space, l.program.subs,
                                           {opt.lax_conseq});
  Outcome out;
  out.details["judgement"] = to_string(j);
  out.details["self_check"] = kv.holds;
  std::string doc = nrb::proof_to_json(proof);
  if (!opt.json_path.empty()) {
    write_file(opt.json_path, doc);
    out.details["proof_file"] = opt.json_path;
  } else {
    out.details["proof"] = ordered_json::parse(doc);
  }
  if (!kv.holds) {
    out.status = "fail";
    out.exit_code = kFail;
    ordered_json ds = ordered_json::array();
    for (const nrb::ProofDiagnostic& d : kv.diagnostics)
      ds.push_back({{"code", d.code}, {"message", d.message}});
    out.details["diagnostics"] = ds;
  }
  return out;
}

Outcome run_check_proof(const Options& opt) {
  Loaded l = load_program(opt.files.at(0), opt.max_states);
  if (opt.files.size() < 2)
    throw nrb::NrbError("check-proof needs a program file and a proof file");
  nrb::ProofNode proof = nrb::proof_from_json(read_file(opt.files.at(1)));
  nrb::KernelVerdict kv = nrb::check_proof(proof, l.space, l.program.subs,
                                           {opt.lax_conseq});
  Outcome out;
  out.details["accepted"] = kv.holds;
  ordered_json ds = ordered_json::array();
  for (const nrb::ProofDiagnostic& d : kv.diagnostics)
    ds.push_back({{"code", d.code}, {"message", d.message}});
  out.details["diagnostics"] = ds;
  if (!kv.holds) {
    out.status = "fail";
    out.exit_code = kFail;
  }
  return out;
}

Outcome run_model(const Options& opt) {
  Loaded l = load_program(opt.files.at(0), opt.max_states);
  nrb::TransitionSet ts =
      nrb::interpret(l.program.main, nrb::GotoEnv{}, l.space, l.program.subs);
  Outcome out;
  out.details["transition_count"] = ts.size();
  std::map<std::string, int> histogram;
  for (const nrb::Transition& t : ts) ++histogram[colour_str(t.colour)];
  out.details["by_colour"] = histogram;
  if (!opt.dot_path.empty()) {
    write_file(opt.dot_path, to_dot(ts, l.space));
    out.details["dot_file"] = opt.dot_path;
  }
  if (!opt.json_path.empty()) {
    ordered_json arr = ordered_json::array();
    for (const nrb::Transition& t : ts)
      arr.push_back(transition_json(l.space, t));
    write_file(opt.json_path, arr.dump(2) + "\n");
    out.details["json_file"] = opt.json_path;
  }
  return out;
}

int report(const std::string& command, Outcome (*run)(const Options&),
           const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  nrb::reset_exists_evaluations();
  Outcome out;
  try {
    out = run(opt);
  } catch (const nrb::ParseError& e) {
    out.status = "error";
    out.exit_code = kParseError;
    out.details["error"] = e.what();
  } catch (const nrb::SizeLimitExceededError& e) {
    out.status = "error";
    out.exit_code = kSizeLimit;
    out.details["error"] = e.what();
  } catch (const nrb::NotDeterministicError& e) {
    out.status = "error";
    out.exit_code = kNotDeterministic;
    out.details["error"] = e.what();
  } catch (const nrb::TripleDoesNotHoldError& e) {
    out.status = "fail";
    out.exit_code = kFail;
    out.details["error"] = e.what();
  } catch (const nrb::NrbError& e) {
    out.status = "error";
    // Scope and file problems are front-end errors.
    out.exit_code = kParseError;
    out.details["error"] = e.what();
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  ordered_json rep = {{"command", command},
                      {"status", out.status},
                      {"details", out.details},
                      {"elapsed_ms", elapsed}};
  if (long long n = nrb::exists_evaluations())
    rep["notes"] = {std::to_string(n) +
                    " existential quantifier evaluation(s) ranged over "
                    "declared variable bounds rather than all integers"};
  std::cout << rep.dump(2) << std::endl;
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for coloured-transition programs"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("NRB_MAX_STATES"))
    opt.max_states = std::atoll(env);

  struct Cmd {
    const char* name;
    const char* desc;
    Outcome (*run)(const Options&);
  };
  const Cmd cmds[] = {
      {"check", "Check a judgement against the program model", run_check},
      {"wp", "Compute a weakest precondition", run_wp},
      {"prove", "Generate and self-check a derivation", run_prove},
      {"check-proof", "Validate a proof JSON document", run_check_proof},
      {"model", "Export the coloured-transition model", run_model},
  };
  std::map<std::string, Outcome (*)(const Options&)> dispatch;
  for (const Cmd& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.desc);
    sub->add_option("files", opt.files, "Input files");
    sub->add_flag("--verify", opt.verify,
                  "Cross-check wp against the brute-force oracle");
    sub->add_flag("--lax-conseq", opt.lax_conseq,
                  "Drop the G_l clause of the conseq side condition");
    sub->add_option("--dot", opt.dot_path, "Write the model as Graphviz DOT");
    sub->add_option("--json", opt.json_path, "Write the artifact as JSON");
    sub->add_option("--max-states", opt.max_states, "State-count cap");
    sub->add_option("--max-counterexamples", opt.max_counterexamples,
                    "Counterexamples to report");
    sub->add_option("--suite", opt.suite_dir,
                    "Directory of judgement files to check in batch");
    dispatch[c.name] = c.run;
  }

  CLI11_PARSE(app, argc, argv);
  for (const auto* sub : app.get_subcommands())
    return report(sub->get_name(), dispatch[sub->get_name()], opt);
  return 0;
}
