#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ebound::cli {

enum class Format { json, csv, table };

/// Report tree with insertion-ordered object keys, so emission order is
/// fixed by construction order and output stays byte-identical across runs.
class Json {
 public:
  using Array = std::vector<Json>;
  using Object = std::vector<std::pair<std::string, Json>>;

  Json() : value_(nullptr) {}
  Json(bool b) : value_(b) {}
  Json(int v) : value_(static_cast<long>(v)) {}
  Json(long v) : value_(v) {}
  Json(double v) : value_(v) {}
  Json(const char* s) : value_(std::string(s)) {}
  Json(std::string s) : value_(std::move(s)) {}
  Json(Array a) : value_(std::move(a)) {}

  static Json object() {
    Json j;
    j.value_ = Object{};
    return j;
  }

  Json& add(std::string key, Json v) {
    std::get<Object>(value_).emplace_back(std::move(key), std::move(v));
    return *this;
  }

  bool is_object() const { return std::holds_alternative<Object>(value_); }
  bool is_array() const { return std::holds_alternative<Array>(value_); }
  const Object& as_object() const { return std::get<Object>(value_); }
  const Array& as_array() const { return std::get<Array>(value_); }

  template <typename Visitor>
  decltype(auto) visit(Visitor&& vis) const {
    return std::visit(std::forward<Visitor>(vis), value_);
  }

 private:
  std::variant<std::nullptr_t, bool, long, double, std::string, Array, Object>
      value_;
};

/// Shortest-faithful decimal at the given significance; 17 digits
/// round-trips a double exactly.
std::string format_double(double v, int digits);

void write_json(std::ostream& out, const Json& root);
/// Dotted-key two-column rendering at 6 significant digits.
void write_table(std::ostream& out, const Json& root);
/// field,value rows; scalar leaves only, booleans as 0/1, 17 digits.
void write_csv_report(std::ostream& out, const Json& root);

void write_report(std::ostream& out, const Json& root, Format format);

/// Rectangular numeric output for sweeps. Rows are emitted in the order
/// given; callers sort by the grid key before handing the grid over.
struct Grid {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_grid(std::ostream& out, const Grid& grid, Format format);

}  // namespace ebound::cli
