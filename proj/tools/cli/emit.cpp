#include "cli/emit.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ebound::cli {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string format_long(long v) { return std::to_string(v); }

void write_json_value(std::ostream& out, const Json& j, int indent) {
  const std::string pad(2 * std::size_t(indent), ' ');
  const std::string pad_in(2 * std::size_t(indent + 1), ' ');
  j.visit([&](const auto& v) {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, std::nullptr_t>) {
      out << "null";
    } else if constexpr (std::is_same_v<T, bool>) {
      out << (v ? "true" : "false");
    } else if constexpr (std::is_same_v<T, long>) {
      out << format_long(v);
    } else if constexpr (std::is_same_v<T, double>) {
      out << format_double(v, 17);
    } else if constexpr (std::is_same_v<T, std::string>) {
      out << '"' << escape(v) << '"';
    } else if constexpr (std::is_same_v<T, Json::Array>) {
      if (v.empty()) {
        out << "[]";
        return;
      }
      bool scalars = true;
      for (const auto& item : v) {
        if (item.is_object() || item.is_array()) scalars = false;
      }
      if (scalars) {
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out << ", ";
          write_json_value(out, v[i], indent);
        }
        out << ']';
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << pad_in;
        write_json_value(out, v[i], indent + 1);
        out << (i + 1 < v.size() ? ",\n" : "\n");
      }
      out << pad << ']';
    } else if constexpr (std::is_same_v<T, Json::Object>) {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << pad_in << '"' << escape(v[i].first) << "\": ";
        write_json_value(out, v[i].second, indent + 1);
        out << (i + 1 < v.size() ? ",\n" : "\n");
      }
      out << pad << '}';
    }
  });
}

struct FlatRow {
  std::string key;
  std::string value;
  bool numeric = false;
};

std::string scalar_text(const Json& j, int digits, bool bool_as_digit) {
  std::string text;
  j.visit([&](const auto& v) {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, std::nullptr_t>) {
      text = "null";
    } else if constexpr (std::is_same_v<T, bool>) {
      text = bool_as_digit ? (v ? "1" : "0") : (v ? "true" : "false");
    } else if constexpr (std::is_same_v<T, long>) {
      text = format_long(v);
    } else if constexpr (std::is_same_v<T, double>) {
      text = format_double(v, digits);
    } else if constexpr (std::is_same_v<T, std::string>) {
      text = v;
    }
  });
  return text;
}

void flatten(const Json& j, const std::string& prefix, int digits,
             bool bool_as_digit, std::vector<FlatRow>& rows) {
  if (j.is_object()) {
    for (const auto& [key, child] : j.as_object()) {
      flatten(child, prefix.empty() ? key : prefix + "." + key, digits,
              bool_as_digit, rows);
    }
    return;
  }
  if (j.is_array()) {
    const auto& items = j.as_array();
    bool scalars = true;
    for (const auto& item : items) {
      if (item.is_object() || item.is_array()) scalars = false;
    }
    if (scalars && !bool_as_digit) {
      std::string joined = "[";
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) joined += ", ";
        joined += scalar_text(items[i], digits, bool_as_digit);
      }
      joined += "]";
      rows.push_back({prefix, joined, false});
      return;
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      flatten(items[i], prefix + "." + std::to_string(i), digits,
              bool_as_digit, rows);
    }
    return;
  }
  rows.push_back({prefix, scalar_text(j, digits, bool_as_digit), true});
}

}  // namespace

std::string format_double(double v, int digits) {
  if (v == 0) v = 0;  // normalize -0
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

void write_json(std::ostream& out, const Json& root) {
  write_json_value(out, root, 0);
  out << '\n';
}

void write_table(std::ostream& out, const Json& root) {
  std::vector<FlatRow> rows;
  flatten(root, "", 6, false, rows);
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.key.size());
  for (const auto& row : rows) {
    out << row.key << std::string(width - row.key.size() + 2, ' ')
        << row.value << '\n';
  }
}

void write_csv_report(std::ostream& out, const Json& root) {
  std::vector<FlatRow> rows;
  flatten(root, "", 17, true, rows);
  out << "field,value\n";
  for (const auto& row : rows) {
    if (!row.numeric) continue;
    out << row.key << ',' << row.value << '\n';
  }
}

void write_report(std::ostream& out, const Json& root, Format format) {
  switch (format) {
    case Format::json:
      write_json(out, root);
      break;
    case Format::csv:
      write_csv_report(out, root);
      break;
    case Format::table:
      write_table(out, root);
      break;
  }
}

void write_grid(std::ostream& out, const Grid& grid, Format format) {
  if (format == Format::csv) {
    for (std::size_t i = 0; i < grid.columns.size(); ++i) {
      out << (i ? "," : "") << grid.columns[i];
    }
    out << '\n';
    for (const auto& row : grid.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << format_double(row[i], 17);
      }
      out << '\n';
    }
    return;
  }
  if (format == Format::json) {
    Json::Array items;
    for (const auto& row : grid.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        obj.add(grid.columns[i], row[i]);
      }
      items.push_back(std::move(obj));
    }
    write_json(out, Json(std::move(items)));
    return;
  }
  std::vector<std::size_t> widths(grid.columns.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 0; i < grid.columns.size(); ++i) {
    widths[i] = grid.columns[i].size();
  }
  for (const auto& row : grid.rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(format_double(row[i], 6));
      widths[i] = std::max(widths[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  for (std::size_t i = 0; i < grid.columns.size(); ++i) {
    out << (i ? "  " : "") << std::setw(int(widths[i])) << grid.columns[i];
  }
  out << '\n';
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << (i ? "  " : "") << std::setw(int(widths[i])) << line[i];
    }
    out << '\n';
  }
}

}  // namespace ebound::cli
