// qpi: isotropy groups of quantum-plane derivations from the command line.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qpi/check/acceptance.hpp"
#include "qpi/qpi.hpp"

namespace {

using qpi::Json;

// --- text rendering -----------------------------------------------------------

bool is_point(const Json& j) {
  return j.is_object() && j.size() == 3 && j.contains("num1") && j.contains("num2") &&
         j.contains("den");
}

bool is_inline(const Json& j) {
  if (j.is_primitive() || is_point(j)) return true;
  if (!j.is_array()) return false;
  for (const Json& e : j) {
    if (e.is_object()) return false;
    if (e.is_array() && !is_inline(e)) return false;
  }
  return true;
}

std::string inline_text(const Json& j) {
  if (j.is_null()) return "none";
  if (j.is_string()) return j.get<std::string>();
  if (is_point(j)) {
    return qpi::torsion_point_from_json(j).to_string();
  }
  if (j.is_array()) {
    if (j.empty()) return "none";
    const bool nested = j.front().is_array();
    std::string out = nested ? "" : "(";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i != 0) out += ", ";
      out += inline_text(j[i]);
    }
    return nested ? out : out + ")";
  }
  return j.dump();
}

void render(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    if (is_inline(value)) {
      out << pad << key << ": " << inline_text(value) << '\n';
      continue;
    }
    out << pad << key << ":\n";
    if (value.is_object()) {
      render(out, value, indent + 2);
      continue;
    }
    for (const Json& item : value) {
      if (is_inline(item)) {
        out << pad << "  - " << inline_text(item) << '\n';
      } else {
        out << pad << "  -\n";
        render(out, item, indent + 4);
      }
    }
  }
}

void emit(const Json& doc, bool json) {
  if (json) std::cout << doc.dump(2) << '\n';
  else render(std::cout, doc, 0);
}

// --- input --------------------------------------------------------------------

/// Inline JSON when the argument starts with '{' or '[', a file path otherwise.
Json load_document(const std::string& arg) {
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
    std::ifstream in(arg);
    if (!in) throw qpi::ParseError("cannot read input file " + arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw qpi::ParseError(std::string("malformed JSON: ") + e.what());
  }
}

qpi::QSpec parse_q(const std::vector<std::string>& words) {
  if (words.size() == 1 && words[0] == "transcendental") return qpi::QSpec::transcendental();
  std::vector<std::string> parts = words;
  if (parts.size() == 1) {
    // "root N" passed as one argument
    std::istringstream in(parts[0]);
    parts.clear();
    for (std::string w; in >> w;) parts.push_back(w);
  }
  if (parts.size() == 2 && (parts[0] == "root" || parts[0] == "root_of_unity")) {
    std::size_t used = 0;
    std::int64_t order = 0;
    try {
      order = std::stoll(parts[1], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != parts[1].size() || used == 0) throw qpi::ParseError("bad root order " + parts[1]);
    return qpi::QSpec::root_of_unity(order);
  }
  throw qpi::ParseError("--q expects \"transcendental\" or \"root N\"");
}

std::string describe_group(const qpi::GroupReport& r) {
  std::string cyclic;
  for (std::int64_t d : r.torsion_invariants) {
    if (d == 1) continue;
    if (!cyclic.empty()) cyclic += " + ";
    cyclic += "Z_" + std::to_string(d);
  }
  switch (r.classification) {
  case qpi::Classification::full_torus: return "(k*)^2";
  case qpi::Classification::infinite: return cyclic.empty() ? "k*" : "k* x " + cyclic;
  case qpi::Classification::finite: return cyclic.empty() ? "trivial" : cyclic;
  }
  return "?";
}

Json report_json(const qpi::GroupReport& r) {
  Json j = qpi::to_json(r);
  j["group"] = describe_group(r);
  return j;
}

constexpr std::int64_t max_listed_elements = 4096;

Json elements_json(const qpi::GroupReport& r) {
  if (r.classification != qpi::Classification::finite || *r.order > max_listed_elements) {
    return nullptr;
  }
  Json out = Json::array();
  for (const qpi::TorsionPoint& p : qpi::enumerate_group(r.generators)) out.push_back(qpi::to_json(p));
  return out;
}

// --- subcommands --------------------------------------------------------------

struct IsotropyArgs {
  std::string input;
  std::vector<std::string> q;
  std::string w, dx, dy, a, b;
};

Json run_isotropy(const IsotropyArgs& args) {
  const bool from_flags = !args.w.empty() || !args.dx.empty() || !args.dy.empty();
  if (from_flags == !args.input.empty()) {
    throw qpi::ParseError("give either an input document or --w / --dx / --dy");
  }
  Json doc;
  if (!args.input.empty()) {
    doc = load_document(args.input);
    if (!args.q.empty() && doc.is_object()) doc["q"] = qpi::to_json(parse_q(args.q));
  } else {
    if (!args.q.empty()) doc["q"] = qpi::to_json(parse_q(args.q));
    if (!args.w.empty()) doc["w"] = args.w;
    if (!args.dx.empty()) doc["dx"] = args.dx;
    if (!args.dy.empty()) doc["dy"] = args.dy;
    if (!args.a.empty()) doc["a"] = args.a;
    if (!args.b.empty()) doc["b"] = args.b;
  }
  const qpi::IsotropyInput in = qpi::isotropy_input_from_json(doc);
  const qpi::IsotropyResult result = qpi::isotropy_group(in.derivation, in.spec);
  Json out;
  out["q"] = in.spec.to_string();
  out["dx"] = in.derivation.dx().to_string();
  out["dy"] = in.derivation.dy().to_string();
  out["path"] = qpi::to_string(result.path);
  out["constraints"] = qpi::to_json(result.constraints);
  out["report"] = report_json(result.report);
  out["elements"] = elements_json(result.report);
  return out;
}

Json run_realize(std::int64_t n1, std::int64_t n2, const std::vector<std::string>& q) {
  const qpi::QSpec spec = q.empty() ? qpi::QSpec::transcendental() : parse_q(q);
  const qpi::RealizabilityVerdict v = qpi::realize_group(n1, n2, spec);
  Json out;
  out["q"] = spec.to_string();
  out["target"] = {n1, n2};
  out["status"] = qpi::to_string(v.status);
  out["witness"] = v.witness ? Json(v.witness->to_string()) : Json(nullptr);
  out["reason"] = v.reason;
  out["verified_group"] = v.verified_group ? report_json(*v.verified_group) : Json(nullptr);
  return out;
}

Json run_intersect(const std::vector<std::int64_t>& e) {
  return qpi::to_json(qpi::intersect(e[0], e[1], e[2], e[3]));
}

Json run_solve(const std::string& input) {
  const std::vector<qpi::Character> chars = qpi::characters_from_json(load_document(input));
  const qpi::GroupReport r = qpi::solve_constraints(chars);
  Json out;
  out["constraints"] = qpi::to_json(qpi::ingest(chars));
  out["report"] = report_json(r);
  out["elements"] = elements_json(r);
  return out;
}

Json run_distinguish(const std::vector<std::string>& q, const std::vector<std::string>& q2) {
  const qpi::QSpec s1 = parse_q(q), s2 = parse_q(q2);
  Json out;
  out["q"] = s1.to_string();
  out["q2"] = s2.to_string();
  const auto w = qpi::find_obstruction(s1, s2);
  out["obstruction"] = w ? Json(w->n) : Json(nullptr);
  if (w) {
    const std::string group = "Z_" + std::to_string(w->n) + " + Z_" + std::to_string(w->n);
    out["realized_by"] = w->forward ? "q" : "q2";
    out["reason"] = group + " is an isotropy group for " + (w->forward ? "q" : "q2") +
                    " but not for " + (w->forward ? "q2" : "q");
  } else {
    out["realized_by"] = nullptr;
    out["reason"] = "no Z_n + Z_n separates the two parameters";
  }
  return out;
}

int run_selfcheck(std::int64_t bound, bool json) {
  qpi::check::AcceptanceOptions opt;
  opt.sweep_bound = bound;
  std::vector<std::future<qpi::check::CriterionResult>> jobs;
  for (int id = 1; id <= qpi::check::criterion_count; ++id) {
    jobs.push_back(std::async(std::launch::async, [id, opt] {
      return qpi::check::run_criterion(id, opt);
    }));
  }
  Json rows = Json::array();
  bool all = true;
  for (auto& job : jobs) {
    const qpi::check::CriterionResult r = job.get();
    all = all && r.passed;
    rows.push_back({{"criterion", r.id},
                    {"result", r.passed ? "PASS" : "FAIL"},
                    {"seconds", r.seconds},
                    {"name", r.name},
                    {"detail", r.detail}});
  }
  if (json) {
    std::cout << Json{{"passed", all}, {"criteria", rows}}.dump(2) << '\n';
  } else {
    for (const Json& r : rows) {
      char seconds[32];
      std::snprintf(seconds, sizeof seconds, "%8.3f s", r["seconds"].get<double>());
      std::cout << "criterion " << r["criterion"].get<int>() << "  "
                << r["result"].get<std::string>() << "  " << seconds << "  "
                << r["name"].get<std::string>() << "\n    " << r["detail"].get<std::string>()
                << '\n';
    }
    std::cout << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
  }
  return all ? 0 : 5;
}

void apply_conductor_cap(std::optional<std::int64_t> flag) {
  if (const char* env = std::getenv("QPI_MAX_CONDUCTOR"); env && *env) {
    char* end = nullptr;
    const long long cap = std::strtoll(env, &end, 10);
    if (*end != '\0' || cap < 1) throw qpi::ParseError("QPI_MAX_CONDUCTOR must be a positive integer");
    qpi::set_max_conductor(cap);
  }
  if (flag) {
    if (*flag < 1) throw qpi::ParseError("--max-conductor must be positive");
    qpi::set_max_conductor(*flag);
  }
}

void report_error(const char* category, const std::string& message, bool json) {
  if (json) {
    std::cerr << Json{{"error", {{"category", category}, {"message", message}}}}.dump() << '\n';
  } else {
    std::cerr << "error: " << category << ": " << message << '\n';
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isotropy groups of derivations of the quantum plane"};
  app.require_subcommand(1, 1);
  bool json = false;
  std::optional<std::int64_t> max_conductor;
  app.add_flag("--json", json, "Emit JSON instead of text");
  app.add_option("--max-conductor", max_conductor, "Largest cyclotomic conductor allowed");

  auto add_q = [](CLI::App* sub, std::vector<std::string>& target, const std::string& name,
                  const std::string& help) {
    return sub->add_option(name, target, help)->expected(1, 2)->type_name("transcendental|root N");
  };

  IsotropyArgs iso;
  CLI::App* isotropy = app.add_subcommand("isotropy", "Isotropy group of a derivation");
  isotropy->add_option("input", iso.input, "Input document: JSON file path or inline JSON");
  add_q(isotropy, iso.q, "--q", "Parameter q");
  isotropy->add_option("--w", iso.w, "Inner part w (text or JSON term list)");
  isotropy->add_option("--dx", iso.dx, "Image of x");
  isotropy->add_option("--dy", iso.dy, "Image of y");
  isotropy->add_option("--a", iso.a, "Coefficient of x d/dx");
  isotropy->add_option("--b", iso.b, "Coefficient of y d/dy");

  std::int64_t n1 = 0, n2 = 0;
  std::vector<std::string> realize_q;
  CLI::App* realize = app.add_subcommand("realize", "Is Z_n1 + Z_n2 an isotropy group?");
  realize->add_option("n1", n1)->required();
  realize->add_option("n2", n2)->required();
  add_q(realize, realize_q, "--q", "Parameter q");

  std::vector<std::int64_t> exps;
  CLI::App* intersect =
      app.add_subcommand("intersect", "Intersection of x^a y^b = 1 and x^c y^d = 1");
  intersect->add_option("exponents", exps, "a b c d")->expected(4)->required();

  std::string solve_input;
  CLI::App* solve = app.add_subcommand("solve", "Torus solutions of a character list [[m, n], ...]");
  solve->add_option("input", solve_input, "JSON file path or inline JSON")->required();

  std::vector<std::string> dq, dq2;
  CLI::App* distinguish =
      app.add_subcommand("distinguish", "Group-theoretic obstruction between two parameters");
  add_q(distinguish, dq, "--q", "First parameter")->required();
  add_q(distinguish, dq2, "--q2", "Second parameter")->required();

  std::int64_t bound = 8;
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "Run the acceptance sweeps");
  selfcheck->add_option("--bound", bound, "Exponent bound of the two-equation sweep");

  for (CLI::App* sub : {isotropy, realize, intersect, solve, distinguish, selfcheck}) {
    sub->add_flag("--json", json, "Emit JSON instead of text");
    sub->add_option("--max-conductor", max_conductor, "Largest cyclotomic conductor allowed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("ParseError", e.what(), json);
    return 2;
  }

  try {
    apply_conductor_cap(max_conductor);
    if (selfcheck->parsed()) {
      if (bound < 1) throw qpi::DomainError("--bound must be positive");
      return run_selfcheck(bound, json);
    }
    Json out;
    if (isotropy->parsed()) out = run_isotropy(iso);
    else if (realize->parsed()) out = run_realize(n1, n2, realize_q);
    else if (intersect->parsed()) out = run_intersect(exps);
    else if (solve->parsed()) out = run_solve(solve_input);
    else out = run_distinguish(dq, dq2);
    emit(out, json);
    return 0;
  } catch (const qpi::Error& e) {
    report_error(e.category_name(), e.what(), json);
    return e.exit_code();
  } catch (const std::exception& e) {
    report_error("ConsistencyError", std::string("unexpected failure: ") + e.what(), json);
    return 5;
  }
}
