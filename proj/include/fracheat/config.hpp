#pragma once

#include <map>
#include <string>
#include <vector>

namespace fracheat {

// Flat "key = value" configuration, one entry per line.
//   numbers    n_time = 256        (any strtod-accepted literal)
//   booleans   dealias = true
//   strings    kind = delta        (bare word or "quoted text")
//   lists      thetas = [0.5, 1.0] (numbers or strings, homogeneous)
// '#' starts a comment; blank lines are skipped.  Later assignments to the
// same key override earlier ones, which is how command-line --set overrides
// compose with a file.
class Config {
 public:
  struct Value {
    enum class Kind { number, boolean, text, number_list, text_list };
    Kind kind = Kind::text;
    double number = 0.0;
    bool boolean = false;
    std::string text;
    std::vector<double> numbers;
    std::vector<std::string> texts;
  };

  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  // One "key = value" assignment, same grammar as a file line.
  void apply_override(const std::string& assignment);

  bool has(const std::string& key) const;
  // Keys in sorted order (deterministic provenance rendering).
  std::vector<std::string> keys() const;

  // Typed getters throw std::invalid_argument on a missing key or a kind
  // mismatch; the *_or forms substitute a default when the key is absent.
  double get_number(const std::string& key) const;
  double get_number_or(const std::string& key, double fallback) const;
  // Number with an integrality check.
  long long get_integer(const std::string& key) const;
  long long get_integer_or(const std::string& key, long long fallback) const;
  bool get_boolean_or(const std::string& key, bool fallback) const;
  std::string get_text(const std::string& key) const;
  std::string get_text_or(const std::string& key, const std::string& fallback) const;
  std::vector<double> get_numbers(const std::string& key) const;
  std::vector<double> get_numbers_or(const std::string& key,
                                     std::vector<double> fallback) const;
  std::vector<std::string> get_texts_or(const std::string& key,
                                        std::vector<std::string> fallback) const;

  // Rejects any key outside the allowed set (schema gate: typos fail before
  // any computation starts).
  void require_known_keys(const std::vector<std::string>& allowed) const;

  // "key = value" lines, keys sorted, values in the file grammar.
  std::string render() const;

 private:
  const Value& at(const std::string& key) const;
  std::map<std::string, Value> entries_;
};

}  // namespace fracheat
