#include "bdspectra/problem_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "bdspectra/errors.hpp"

namespace bdspectra {

namespace {

using json = nlohmann::json;

struct Entry {
  json value;
  std::size_t line;
};

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_string && ch == '\\') {
      ++i;
    } else if (ch == '"') {
      in_string = !in_string;
    } else if (ch == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

int bracket_balance(const std::string& text) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_string && ch == '\\') {
      ++i;
    } else if (ch == '"') {
      in_string = !in_string;
    } else if (!in_string && ch == '[') {
      ++depth;
    } else if (!in_string && ch == ']') {
      --depth;
    }
  }
  return depth;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::map<std::string, Entry> read_entries(std::string_view text) {
  static const std::vector<std::string> known = {"name", "kind", "n", "domain", "a", "b", "c"};
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_line(lineno, "expected `key = value`");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    const std::size_t start = lineno;
    while (bracket_balance(value) > 0 && std::getline(in, raw)) {
      ++lineno;
      value += ' ' + trim(strip_comment(raw));
    }
    if (std::find(known.begin(), known.end(), key) == known.end())
      fail_line(start, "unknown key '" + key + "'");
    if (entries.count(key)) fail_line(start, "duplicate key '" + key + "'");
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error& e) {
      fail_line(start, "key '" + key + "': malformed value: " + e.what());
    }
    entries.emplace(key, Entry{std::move(parsed), start});
  }
  return entries;
}

const Entry& require(const std::map<std::string, Entry>& entries, const std::string& key) {
  const auto it = entries.find(key);
  if (it == entries.end()) throw InputError("missing key '" + key + "'");
  return it->second;
}

std::vector<CoeffExpr> parse_coefficients(const Entry& entry, const std::string& key,
                                          std::size_t expected) {
  if (!entry.value.is_array())
    fail_line(entry.line, "key '" + key + "' must be an array of expression strings");
  if (entry.value.size() != expected)
    fail_line(entry.line, "key '" + key + "' has " + std::to_string(entry.value.size()) +
                              " entries, expected n+1 = " + std::to_string(expected));
  std::vector<CoeffExpr> out;
  for (std::size_t j = 0; j < entry.value.size(); ++j) {
    const json& item = entry.value[j];
    std::string source;
    if (item.is_string()) {
      source = item.get<std::string>();
    } else if (item.is_number()) {
      source = item.dump();
    } else {
      fail_line(entry.line, key + "[" + std::to_string(j) + "] must be a string or number");
    }
    try {
      out.push_back(parse_expr(source));
    } catch (const InputError& e) {
      fail_line(entry.line, key + "[" + std::to_string(j) + "] = \"" + source + "\": " + e.what());
    }
  }
  return out;
}

}  // namespace

const Interval& Problem::domain() const {
  return std::visit([](const auto& s) -> const Interval& { return s.domain(); }, spec);
}

const std::string& Problem::name() const {
  return std::visit([](const auto& s) -> const std::string& { return s.name(); }, spec);
}

std::size_t Problem::n() const {
  return std::visit([](const auto& s) { return s.n(); }, spec);
}

Problem parse_problem(std::string_view text) {
  const auto entries = read_entries(text);

  const Entry& kind_entry = require(entries, "kind");
  if (!kind_entry.value.is_string()) fail_line(kind_entry.line, "key 'kind' must be a string");
  const auto kind = kind_entry.value.get<std::string>();

  const Entry& n_entry = require(entries, "n");
  if (!n_entry.value.is_number_integer() || n_entry.value.get<long long>() < 0)
    fail_line(n_entry.line, "key 'n' must be a non-negative integer");
  const auto size = static_cast<std::size_t>(n_entry.value.get<long long>()) + 1;

  const Entry& dom = require(entries, "domain");
  if (!dom.value.is_array() || dom.value.size() != 2 || !dom.value[0].is_number() ||
      !dom.value[1].is_number())
    fail_line(dom.line, "key 'domain' must be [lo, hi]");
  const Interval domain{dom.value[0].get<double>(), dom.value[1].get<double>()};
  if (!(domain.lo < domain.hi)) fail_line(dom.line, "key 'domain' needs lo < hi");

  std::string name;
  if (const auto it = entries.find("name"); it != entries.end()) {
    if (!it->second.value.is_string()) fail_line(it->second.line, "key 'name' must be a string");
    name = it->second.value.get<std::string>();
  }

  if (kind == "birth_death") {
    if (const auto it = entries.find("c"); it != entries.end())
      fail_line(it->second.line, "key 'c' is not valid for kind birth_death");
    auto a = parse_coefficients(require(entries, "a"), "a", size);
    auto b = parse_coefficients(require(entries, "b"), "b", size);
    return Problem{BirthDeathSpec(std::move(a), std::move(b), domain, std::move(name))};
  }
  if (kind == "random_walk") {
    for (const char* key : {"a", "b"})
      if (const auto it = entries.find(key); it != entries.end())
        fail_line(it->second.line, std::string("key '") + key + "' is not valid for kind random_walk");
    if (size < 2) fail_line(n_entry.line, "random_walk needs n >= 1");
    auto c = parse_coefficients(require(entries, "c"), "c", size);
    return Problem{RandomWalkSpec(std::move(c), domain, std::move(name))};
  }
  fail_line(kind_entry.line, "unknown kind '" + kind + "' (expected birth_death or random_walk)");
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_problem(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace bdspectra
