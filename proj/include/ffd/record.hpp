#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ffd {

struct Missing {
  friend bool operator==(Missing, Missing) = default;
};

// A cell: missing, a finite number, or text.
using Value = std::variant<Missing, double, std::string>;

inline bool is_missing(const Value& v) { return std::holds_alternative<Missing>(v); }
inline std::optional<double> as_number(const Value& v) {
  if (const double* d = std::get_if<double>(&v)) return *d;
  return std::nullopt;
}
inline const std::string* as_text(const Value& v) { return std::get_if<std::string>(&v); }

// Field name -> value, kept in insertion order. Names are unique.
class Record {
 public:
  Record() = default;

  // Throws ContractError on a duplicate or empty name, or a non-finite number.
  void set(std::string name, Value value);
  // Missing when the field is absent.
  const Value& get(std::string_view name) const;
  bool has(std::string_view name) const;

  std::size_t size() const noexcept { return fields_.size(); }
  const std::vector<std::pair<std::string, Value>>& fields() const noexcept {
    return fields_;
  }

 private:
  std::vector<std::pair<std::string, Value>> fields_;
};

}  // namespace ffd
