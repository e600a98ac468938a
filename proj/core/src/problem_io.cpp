#include "dcop/problem_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dcop {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) {
    if (!out.empty()) out += "; ";
    out += line;
  }
  return out;
}

template <typename T>
T required(const json& node, const char* key, const std::string& where) {
  if (!node.is_object() || !node.contains(key)) {
    throw ProblemFormatError({where + " is missing key '" + key + "'"});
  }
  try {
    return node.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ProblemFormatError({where + " key '" + key + "': " + e.what()});
  }
}

}  // namespace

ProblemFormatError::ProblemFormatError(std::vector<std::string> violations)
    : std::runtime_error("invalid problem: " + join(violations)), violations_(std::move(violations)) {}

Problem parse_problem(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ProblemFormatError({std::string("malformed JSON: ") + e.what()});
  }
  if (!doc.is_object()) throw ProblemFormatError({"top-level document must be an object"});

  Problem problem;
  std::set<int> agents;
  const auto vars = required<json>(doc, "variables", "document");
  if (!vars.is_array()) throw ProblemFormatError({"'variables' must be an array"});
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string where = "variables[" + std::to_string(i) + "]";
    VariableDecl v;
    v.id = required<int>(vars[i], "id", where);
    const auto d = required<long long>(vars[i], "domain_size", where);
    if (d < 1) throw ProblemFormatError({where + " domain_size must be positive"});
    v.domain_size = static_cast<std::size_t>(d);
    v.owner_agent = vars[i].contains("agent") ? required<int>(vars[i], "agent", where) : v.id;
    agents.insert(v.owner_agent);
    problem.variables.push_back(v);
  }
  problem.agents.assign(agents.begin(), agents.end());

  const auto funcs = required<json>(doc, "functions", "document");
  if (!funcs.is_array()) throw ProblemFormatError({"'functions' must be an array"});
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    const std::string where = "functions[" + std::to_string(i) + "]";
    FunctionDecl f;
    f.id = required<int>(funcs[i], "id", where);
    f.scope = required<std::vector<int>>(funcs[i], "scope", where);
    f.table.shape = required<std::vector<std::size_t>>(funcs[i], "shape", where);
    f.table.values = required<std::vector<double>>(funcs[i], "values", where);
    problem.functions.push_back(std::move(f));
  }

  if (doc.contains("meta")) problem.meta = doc["meta"].dump();

  auto violations = validate_problem(problem);
  if (!violations.empty()) throw ProblemFormatError(std::move(violations));
  return problem;
}

std::string serialize_problem(const Problem& problem) {
  json doc;
  doc["variables"] = json::array();
  for (const auto& v : problem.variables) {
    doc["variables"].push_back({{"id", v.id}, {"domain_size", v.domain_size}, {"agent", v.owner_agent}});
  }
  doc["functions"] = json::array();
  for (const auto& f : problem.functions) {
    doc["functions"].push_back(
        {{"id", f.id}, {"scope", f.scope}, {"shape", f.table.shape}, {"values", f.table.values}});
  }
  doc["meta"] = problem.meta.empty() ? json::object() : json::parse(problem.meta);
  return doc.dump() + "\n";
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemFormatError({"cannot open " + path.string()});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

void save_problem(const Problem& problem, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_problem(problem);
}

}  // namespace dcop
