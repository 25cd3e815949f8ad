#include "fracheat/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracheat {
namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::invalid_argument("config: line " + std::to_string(line) + ": " + what);
}

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Truncate at an unquoted '#'.
std::string drop_comment(const std::string& s) {
  bool in_quote = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_quote = !in_quote;
    if (s[i] == '#' && !in_quote) return s.substr(0, i);
  }
  return s;
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
      return false;
  return true;
}

bool parse_number(const std::string& token, double& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size();
}

// One scalar token: quoted string, bool, number, or bare word.
Config::Value parse_scalar(const std::string& token, int line) {
  Config::Value v;
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
    v.kind = Config::Value::Kind::text;
    v.text = token.substr(1, token.size() - 2);
    if (v.text.find('"') != std::string::npos) fail(line, "stray quote inside string");
    return v;
  }
  if (token == "true" || token == "false") {
    v.kind = Config::Value::Kind::boolean;
    v.boolean = token == "true";
    return v;
  }
  double num = 0.0;
  if (parse_number(token, num)) {
    v.kind = Config::Value::Kind::number;
    v.number = num;
    return v;
  }
  if (!valid_key(token)) fail(line, "cannot parse value '" + token + "'");
  v.kind = Config::Value::Kind::text;
  v.text = token;
  return v;
}

// Split a bracket body on commas that are outside quotes.
std::vector<std::string> split_list(const std::string& body, int line) {
  std::vector<std::string> items;
  std::string current;
  bool in_quote = false;
  for (char c : body) {
    if (c == '"') in_quote = !in_quote;
    if (c == ',' && !in_quote) {
      items.push_back(strip(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (in_quote) fail(line, "unterminated string in list");
  const std::string last = strip(current);
  if (!last.empty()) items.push_back(last);
  for (const auto& it : items)
    if (it.empty()) fail(line, "empty list element");
  return items;
}

Config::Value parse_value(const std::string& raw, int line) {
  if (raw.empty()) fail(line, "missing value");
  if (raw.front() == '[') {
    if (raw.back() != ']') fail(line, "unterminated list");
    const auto items = split_list(raw.substr(1, raw.size() - 2), line);
    Config::Value v;
    if (items.empty()) {
      v.kind = Config::Value::Kind::number_list;
      return v;
    }
    const auto first = parse_scalar(items.front(), line);
    if (first.kind == Config::Value::Kind::number) {
      v.kind = Config::Value::Kind::number_list;
      for (const auto& it : items) {
        const auto elem = parse_scalar(it, line);
        if (elem.kind != Config::Value::Kind::number)
          fail(line, "mixed kinds in list");
        v.numbers.push_back(elem.number);
      }
    } else {
      v.kind = Config::Value::Kind::text_list;
      for (const auto& it : items) {
        const auto elem = parse_scalar(it, line);
        if (elem.kind != Config::Value::Kind::text)
          fail(line, "mixed kinds in list");
        v.texts.push_back(elem.text);
      }
    }
    return v;
  }
  return parse_scalar(raw, line);
}

std::string render_value(const Config::Value& v) {
  auto number = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  switch (v.kind) {
    case Config::Value::Kind::number:
      return number(v.number);
    case Config::Value::Kind::boolean:
      return v.boolean ? "true" : "false";
    case Config::Value::Kind::text:
      return "\"" + v.text + "\"";
    case Config::Value::Kind::number_list: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.numbers.size(); ++i)
        out += (i ? ", " : "") + number(v.numbers[i]);
      return out + "]";
    }
    case Config::Value::Kind::text_list: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.texts.size(); ++i)
        out += (i ? ", " : "") + ("\"" + v.texts[i] + "\"");
      return out + "]";
    }
  }
  return {};
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = strip(drop_comment(raw));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = strip(stripped.substr(0, eq));
    if (!valid_key(key)) fail(line, "bad key '" + key + "'");
    cfg.entries_[key] = parse_value(strip(stripped.substr(eq + 1)), line);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

void Config::apply_override(const std::string& assignment) {
  const Config one = parse_string(assignment);
  if (one.entries_.size() != 1)
    throw std::invalid_argument("config: override must be a single 'key=value': '" +
                                assignment + "'");
  entries_[one.entries_.begin()->first] = one.entries_.begin()->second;
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : entries_) out.push_back(key);
  return out;
}

const Config::Value& Config::at(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw std::invalid_argument("config: missing key '" + key + "'");
  return it->second;
}

double Config::get_number(const std::string& key) const {
  const auto& v = at(key);
  if (v.kind != Value::Kind::number)
    throw std::invalid_argument("config: key '" + key + "' is not a number");
  return v.number;
}

double Config::get_number_or(const std::string& key, double fallback) const {
  return has(key) ? get_number(key) : fallback;
}

long long Config::get_integer(const std::string& key) const {
  const double v = get_number(key);
  const long long n = static_cast<long long>(v);
  if (static_cast<double>(n) != v)
    throw std::invalid_argument("config: key '" + key + "' is not an integer");
  return n;
}

long long Config::get_integer_or(const std::string& key, long long fallback) const {
  return has(key) ? get_integer(key) : fallback;
}

bool Config::get_boolean_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (v.kind != Value::Kind::boolean)
    throw std::invalid_argument("config: key '" + key + "' is not a boolean");
  return v.boolean;
}

std::string Config::get_text(const std::string& key) const {
  const auto& v = at(key);
  if (v.kind != Value::Kind::text)
    throw std::invalid_argument("config: key '" + key + "' is not a string");
  return v.text;
}

std::string Config::get_text_or(const std::string& key,
                                const std::string& fallback) const {
  return has(key) ? get_text(key) : fallback;
}

std::vector<double> Config::get_numbers(const std::string& key) const {
  const auto& v = at(key);
  if (v.kind == Value::Kind::number) return {v.number};  // scalar promotes
  if (v.kind != Value::Kind::number_list)
    throw std::invalid_argument("config: key '" + key + "' is not a number list");
  return v.numbers;
}

std::vector<double> Config::get_numbers_or(const std::string& key,
                                           std::vector<double> fallback) const {
  return has(key) ? get_numbers(key) : std::move(fallback);
}

std::vector<std::string> Config::get_texts_or(const std::string& key,
                                              std::vector<std::string> fallback) const {
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (v.kind == Value::Kind::text) return {v.text};
  if (v.kind != Value::Kind::text_list)
    throw std::invalid_argument("config: key '" + key + "' is not a string list");
  return v.texts;
}

void Config::require_known_keys(const std::vector<std::string>& allowed) const {
  for (const auto& [key, value] : entries_) {
    bool known = false;
    for (const auto& a : allowed)
      if (key == a) {
        known = true;
        break;
      }
    if (!known) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

std::string Config::render() const {
  std::string out;
  for (const auto& [key, value] : entries_)
    out += key + " = " + render_value(value) + "\n";
  return out;
}

}  // namespace fracheat
