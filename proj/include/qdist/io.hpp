#ifndef QDIST_IO_HPP
#define QDIST_IO_HPP

#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qdist/error.hpp"
#include "qdist/field.hpp"
#include "qdist/point_set.hpp"
#include "qdist/quad_form.hpp"

namespace qdist {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  const auto t = trim(s);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidParameter("malformed " + what + ": '" + s + "'");
  try {
    return std::stoull(t);
  } catch (const std::out_of_range&) {
    throw InvalidParameter(what + " out of range: '" + s + "'");
  }
}

inline Element parse_element(const Field& f, const std::string& s) {
  const auto v = parse_uint(s, "field element index");
  if (v >= f.q()) throw InvalidParameter("field element index " + s + " is not below q = " + std::to_string(f.q()));
  return Element{static_cast<std::uint32_t>(v)};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Lines with '#' comments and blank lines removed.
inline std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

}  // namespace detail

/// A parsed --form argument: the standard representative, plus the original matrix when the
/// input was not already in standard shape.
struct FormInput {
  std::string description;
  std::optional<QuadraticForm> general;
  StandardForm standard;

  unsigned dim() const { return standard.dim(); }
};

inline FormInput standard_input(const FieldPtr& field, unsigned dim, Element eps) {
  return {"standard:eps=" + std::to_string(eps.index()), std::nullopt, StandardForm(field, dim, eps)};
}

inline FormInput general_input(std::string description, QuadraticForm form) {
  auto std_form = standardize(form);
  return {std::move(description), std::move(form), std::move(std_form)};
}

inline std::string matrix_description(const SquareMatrix& m) {
  std::string s = "matrix:";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ";";
    for (std::size_t j = 0; j < m.size(); ++j) s += (j ? "," : "") + std::to_string(m(i, j).index());
  }
  return s;
}

namespace detail {

inline SquareMatrix parse_rows(const Field& f, const std::vector<std::vector<std::string>>& rows) {
  const std::size_t d = rows.size();
  SquareMatrix m = SquareMatrix::identity(f, static_cast<unsigned>(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d)
      throw InvalidParameter("form matrix row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(d));
    for (std::size_t j = 0; j < d; ++j) m(i, j) = parse_element(f, rows[i][j]);
  }
  return m;
}

inline FormInput parse_keyword_form(const FieldPtr& field, const std::string& spec, std::optional<unsigned> dim) {
  if (!dim || *dim == 0) throw InvalidParameter("form '" + spec + "' needs a dimension (--dim)");
  if (spec == "euclidean") {
    auto form = QuadraticForm::euclidean(field, *dim);
    return general_input("euclidean", std::move(form));
  }
  if (spec == "standard") return standard_input(field, *dim, field->one());
  const std::string prefix = "standard:eps=";
  if (spec.rfind(prefix, 0) == 0) {
    const Element eps = parse_element(*field, spec.substr(prefix.size()));
    if (eps.is_zero()) throw InvalidParameter("epsilon must be non-zero");
    return standard_input(field, *dim, eps);
  }
  throw InvalidParameter("unknown form '" + spec + "'");
}

}  // namespace detail

/// Form file: a keyword line ("euclidean", "standard", "standard:eps=k") with the dimension on
/// the next line when needed, or "d" followed by d rows of element indices.
inline FormInput parse_form_file_text(const FieldPtr& field, const std::string& text, std::optional<unsigned> dim) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw InvalidParameter("form file is empty");
  if (!std::isdigit(static_cast<unsigned char>(lines[0][0]))) {
    if (lines.size() > 1) dim = static_cast<unsigned>(detail::parse_uint(lines[1], "dimension"));
    return detail::parse_keyword_form(field, lines[0], dim);
  }
  const auto d = detail::parse_uint(lines[0], "dimension");
  if (d == 0 || d > 16) throw InvalidParameter("form dimension must be in [1, 16]");
  if (lines.size() != d + 1) throw InvalidParameter("form file must contain exactly d rows after the dimension");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 1; i <= d; ++i) rows.push_back(detail::tokens(lines[i]));
  auto m = detail::parse_rows(*field, rows);
  auto description = matrix_description(m);
  return general_input(std::move(description), QuadraticForm(field, std::move(m)));
}

/// --form values: "euclidean", "standard", "standard:eps=k" (with --dim), "matrix:a,b;c,d",
/// or a path to a form file.
inline FormInput parse_form(const FieldPtr& field, const std::string& spec, std::optional<unsigned> dim) {
  if (spec == "euclidean" || spec.rfind("standard", 0) == 0) return detail::parse_keyword_form(field, spec, dim);
  if (spec.rfind("matrix:", 0) == 0) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : detail::split(spec.substr(7), ';')) rows.push_back(detail::split(row, ','));
    auto m = detail::parse_rows(*field, rows);
    if (dim && *dim != m.size()) throw InvalidParameter("--dim disagrees with the matrix size");
    auto description = matrix_description(m);
    return general_input(std::move(description), QuadraticForm(field, std::move(m)));
  }
  return parse_form_file_text(field, detail::read_file(spec), dim);
}

/// The standard-coordinate image C^{-1} E, so that ||y||_Q on it reproduces Q on E.
inline PointSet to_standard_coordinates(const PointSet& e, const FormInput& form) {
  if (!form.general) return e;
  const Field& f = e.field();
  const auto c_inv = inverse(f, form.standard.basis_change());
  PointSet out(e.field_ptr(), e.dim());
  Point x(e.dim());
  for (auto idx : e.indices()) {
    e.codec().decode(idx, x);
    out.insert(apply(f, c_inv, x));
  }
  return out;
}

/// Point-set text: a header "n q" then one point per line, coordinates as element indices.
inline PointSet parse_point_set(const FieldPtr& field, const std::string& text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw InvalidParameter("point-set file lacks the 'n q' header");
  const auto header = detail::tokens(lines[0]);
  if (header.size() != 2) throw InvalidParameter("point-set header must be 'n q'");
  const auto n = detail::parse_uint(header[0], "dimension");
  const auto q = detail::parse_uint(header[1], "field size");
  if (n == 0) throw InvalidParameter("point-set dimension must be positive");
  if (q != field->q())
    throw InvalidParameter("point-set file is over q = " + header[1] + " but the field has q = " + std::to_string(field->q()));
  PointSet s(field, static_cast<unsigned>(n));
  Point x(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto t = detail::tokens(lines[i]);
    if (t.size() != n)
      throw InvalidParameter("point on line " + std::to_string(i + 1) + " has " + std::to_string(t.size()) +
                             " coordinates, expected " + std::to_string(n));
    for (std::size_t k = 0; k < n; ++k) x[k] = detail::parse_element(*field, t[k]);
    s.insert(x);
  }
  return s;
}

inline PointSet read_point_set(const FieldPtr& field, const std::string& path) {
  return parse_point_set(field, detail::read_file(path));
}

inline std::string format_point_set(const PointSet& s) {
  std::ostringstream out;
  out << s.dim() << ' ' << s.field().q() << '\n';
  Point x(s.dim());
  for (auto idx : s.indices()) {
    s.codec().decode(idx, x);
    for (unsigned k = 0; k < s.dim(); ++k) out << (k ? " " : "") << x[k].index();
    out << '\n';
  }
  return out.str();
}

}  // namespace qdist

#endif  // QDIST_IO_HPP
