#include "nashx/problem.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nashx/verify.hpp"

namespace nashx {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail_line(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double rational_to_double(const std::string& text, int line) {
  size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  } catch (const std::exception&) {
    fail_line(line, "bad rational '" + text + "'");
  }
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  ProblemFile out;
  NashProblem& p = out.problem;
  std::vector<std::pair<int, std::string>> eq_lines;
  std::vector<std::tuple<int, std::string, std::string>> branch_lines;
  std::string variety_line;
  int variety_line_no = 0;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    if (head == "vars") {
      p.x_vars.assign(toks.begin() + 1, toks.end());
      if (p.x_vars.empty()) fail_line(line_no, "vars: at least one variable required");
    } else if (head == "unknowns") {
      p.unknowns.assign(toks.begin() + 1, toks.end());
      if (p.unknowns.empty()) fail_line(line_no, "unknowns: at least one name required");
    } else if (head == "eq") {
      size_t pos = line.find("eq");
      eq_lines.emplace_back(line_no, line.substr(pos + 2));
    } else if (head == "variety") {
      variety_line = line;
      variety_line_no = line_no;
    } else if (head == "branch") {
      size_t colon = line.find(':');
      if (colon == std::string::npos || toks.size() < 2)
        fail_line(line_no, "branch: expected 'branch <unknown> : <terms>'");
      branch_lines.emplace_back(line_no, toks[1], line.substr(colon + 1));
    } else if (head == "config") {
      for (size_t i = 1; i < toks.size(); ++i) {
        size_t eq = toks[i].find('=');
        if (eq == std::string::npos) fail_line(line_no, "config: expected key=value, got '" + toks[i] + "'");
        std::string key = toks[i].substr(0, eq), val = toks[i].substr(eq + 1);
        try {
          if (key == "jet_order") p.jet_order = std::stoi(val);
          else if (key == "seed") p.seed = std::stoull(val);
          else if (key == "samples") out.samples = std::stoi(val);
          else if (key == "retries") p.budgets.retries = std::stoi(val);
          else if (key == "elimination") p.budgets.elimination = std::stol(val);
          else if (key == "radius") {
            out.radius = rational_to_double(val, line_no);
            out.radius_text = val;
          } else if (key == "nu") {
            size_t dots = val.find("..");
            if (dots == std::string::npos) fail_line(line_no, "config: nu=a..b expected");
            p.nu_min = std::stoi(val.substr(0, dots));
            p.nu_max = std::stoi(val.substr(dots + 2));
            if (p.nu_min < 1 || p.nu_max < p.nu_min)
              fail_line(line_no, "config: nu range must satisfy 1 <= a <= b");
          } else {
            fail_line(line_no, "config: unknown key '" + key + "'");
          }
        } catch (const std::invalid_argument&) {
          fail_line(line_no, "config: bad value for '" + key + "'");
        }
      }
    } else {
      fail_line(line_no, "unknown directive '" + head + "'");
    }
  }

  if (p.x_vars.empty()) throw std::runtime_error("missing 'vars' line");
  if (p.unknowns.empty()) throw std::runtime_error("missing 'unknowns' line");
  if (p.jet_order < 1) throw std::runtime_error("config: jet_order must be >= 1");

  std::vector<std::string> all_vars = p.x_vars;
  all_vars.insert(all_vars.end(), p.unknowns.begin(), p.unknowns.end());
  for (const auto& u : p.unknowns)
    for (const auto& x : p.x_vars)
      if (u == x) throw std::runtime_error("unknown '" + u + "' collides with a variable name");

  if (!variety_line.empty() && !eq_lines.empty())
    fail_line(variety_line_no, "give either eq lines or a variety block, not both");
  if (!variety_line.empty()) {
    auto [v, base_count] = parse_variety(variety_line);
    (void)base_count;
    if (v.ambient_vars != p.unknowns)
      fail_line(variety_line_no, "variety variables must list exactly the unknowns");
    p.variety = v;
    out.equations = v.generators;
    p.graph_mode = false;
  } else {
    if (eq_lines.empty()) throw std::runtime_error("no equations given");
    bool uses_x = false;
    for (const auto& [ln, src] : eq_lines) {
      MPoly q;
      try {
        q = parse_poly(src, all_vars);
      } catch (const std::exception& e) {
        fail_line(ln, e.what());
      }
      out.equations.push_back(q);
      for (const auto& x : p.x_vars)
        if (q.degree(x) > 0) uses_x = true;
    }
    p.graph_mode = uses_x;
    std::vector<std::string> ambient = uses_x ? all_vars : p.unknowns;
    p.variety.ambient_vars = ambient;
    p.variety.generators.clear();
    for (const auto& q : out.equations) p.variety.generators.push_back(q.aligned_to(ambient));
    p.variety.codim = static_cast<int>(out.equations.size());
  }

  std::map<std::string, Jet> branches;
  for (const auto& [ln, name, src] : branch_lines) {
    if (std::find(p.unknowns.begin(), p.unknowns.end(), name) == p.unknowns.end())
      fail_line(ln, "branch for undeclared unknown '" + name + "'");
    MPoly terms;
    try {
      terms = parse_poly(src, p.x_vars);
    } catch (const std::exception& e) {
      fail_line(ln, e.what());
    }
    branches.emplace(name, Jet::from_poly(terms, p.x_vars, p.jet_order));
  }
  std::vector<Jet> comps;
  for (const auto& u : p.unknowns) {
    auto it = branches.find(u);
    if (it == branches.end()) throw std::runtime_error("missing branch for unknown '" + u + "'");
    comps.push_back(it->second);
  }
  p.f = MapJet(comps);

  // branch jets must satisfy the equations to jet order
  std::map<std::string, Jet> assign;
  for (const auto& x : p.x_vars) assign.emplace(x, Jet::coordinate(x, p.x_vars, p.jet_order));
  for (size_t j = 0; j < p.unknowns.size(); ++j) assign.emplace(p.unknowns[j], comps[j]);
  for (size_t k = 0; k < out.equations.size(); ++k) {
    Jet defect = eval_poly_at_jets(out.equations[k], assign);
    if (!defect.is_zero())
      throw std::runtime_error("branch violates equation " + std::to_string(k + 1) +
                               " at defect order " + std::to_string(defect.valuation()));
  }
  return out;
}

std::string print_problem(const ProblemFile& p) {
  std::ostringstream out;
  out << "vars";
  for (const auto& x : p.problem.x_vars) out << " " << x;
  out << "\nunknowns";
  for (const auto& u : p.problem.unknowns) out << " " << u;
  out << "\n";
  for (const auto& q : p.equations) out << "eq " << q.str() << "\n";
  for (size_t j = 0; j < p.problem.unknowns.size(); ++j)
    out << "branch " << p.problem.unknowns[j] << " : "
        << p.problem.f.components[j].to_poly().str() << "\n";
  out << "config jet_order=" << p.problem.jet_order << " nu=" << p.problem.nu_min << ".."
      << p.problem.nu_max << " seed=" << p.problem.seed << " radius=" << p.radius_text
      << " samples=" << p.samples << "\n";
  return out.str();
}

int run_report(const ProblemFile& pf, const std::string& out_path) {
  const NashProblem& p = pf.problem;
  ordered_json doc;
  doc["problem"] = {{"vars", p.x_vars},
                    {"unknowns", p.unknowns},
                    {"graph_mode", p.graph_mode},
                    {"jet_order", p.jet_order},
                    {"nu", {p.nu_min, p.nu_max}},
                    {"seed", p.seed},
                    {"radius", pf.radius_text},
                    {"samples", pf.samples}};

  auto emit = [&](int code) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open output path: " << out_path << "\n";
      return 4;
    }
    out << doc.dump(2) << "\n";
    if (!out) {
      std::cerr << "write failed: " << out_path << "\n";
      return 4;
    }
    return code;
  };

  auto started = std::chrono::steady_clock::now();
  ApproxResult result;
  try {
    result = approximate(p);
  } catch (const PipelineError& e) {
    doc["error"] = {{"stage", e.stage}, {"seed", e.seed}, {"message", e.what()}};
    int io = emit(3);
    return io == 4 ? 4 : 3;
  } catch (const std::exception& e) {
    doc["error"] = {{"stage", "unknown"}, {"message", e.what()}};
    int io = emit(3);
    return io == 4 ? 4 : 3;
  }
  auto report = verify_result(pf.equations, p.x_vars, p.unknowns, p.f, result, pf.radius,
                              pf.samples, p.seed);
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
  std::cerr << "pipeline+verification: " << elapsed.count() << " s\n";

  doc["base_dim"] = result.base_dim;
  doc["reg_order"] = result.reg_order;
  doc["witness_var"] = result.witness_var;
  ordered_json entries = ordered_json::array();
  for (size_t e = 0; e < result.entries.size(); ++e) {
    const auto& entry = result.entries[e];
    const auto& v = report.entries[e];
    ordered_json witnesses = ordered_json::array();
    for (size_t j = 0; j < entry.witnesses.size(); ++j)
      witnesses.push_back({{"unknown", p.unknowns[j]},
                           {"degree", entry.witnesses[j].degree},
                           {"poly", entry.witnesses[j].poly.str()}});
    ordered_json approx = ordered_json::array();
    for (const auto& c : entry.approximant.components) approx.push_back(c.str());
    ordered_json verif = {{"witness_ok", v.witness_ok},
                          {"membership_defect",
                           v.membership_defect_order > result.jet_order
                               ? ordered_json(">= " + std::to_string(result.jet_order + 1))
                               : ordered_json(v.membership_defect_order)},
                          {"sup_error", v.sup_error}};
    if (v.has_chain) verif["chain_ok"] = v.chain_ok;
    entries.push_back(
        {{"nu", entry.nu}, {"witnesses", witnesses}, {"approximants", approx}, {"verification", verif}});
  }
  doc["entries"] = entries;
  bool ok = report.all_ok();
  doc["all_ok"] = ok;
  int io = emit(ok ? 0 : 2);
  return io;
}

}  // namespace nashx
