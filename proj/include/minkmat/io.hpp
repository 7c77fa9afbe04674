#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "minkmat/polymatroid.hpp"

namespace minkmat {

using AnyTuple =
    std::variant<SubspaceTuple<RationalField>, SubspaceTuple<PrimeField>>;

template <class Fn>
decltype(auto) with_tuple(const AnyTuple& t, Fn&& fn) {
  return std::visit(std::forward<Fn>(fn), t);
}

namespace detail {

struct FileLine {
  std::size_t number = 0;  // 1-based
  std::string text;        // comment-stripped
};

/// Token plus its 1-based starting column in the original line.
struct Token {
  std::size_t column = 0;
  std::string text;
};

inline std::vector<FileLine> content_lines(const std::string& text) {
  std::vector<FileLine> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      out.push_back({number, line});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r')
      ++i;
    out.push_back({start + 1, line.substr(start, i - start)});
  }
  return out;
}

inline long long parse_integer(const char* doc, const FileLine& line,
                               const Token& tok) {
  long long value = 0;
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec == std::errc::result_out_of_range)
    throw InputError(std::string(doc) + " line " +
                     std::to_string(line.number) + ", column " +
                     std::to_string(tok.column) + ": integer out of range");
  if (ec != std::errc{} || ptr != end)
    throw InputError(std::string(doc) + " line " +
                     std::to_string(line.number) + ", column " +
                     std::to_string(tok.column) + ": expected integer, got '" +
                     tok.text + "'");
  return value;
}

[[noreturn]] inline void file_error(const char* doc, const FileLine& line,
                                    const std::string& message) {
  throw InputError(std::string(doc) + " line " +
                   std::to_string(line.number) + ": " + message);
}

template <class F>
SubspaceTuple<F> build_parsed_tuple(
    F field, std::size_t dim,
    const std::vector<std::vector<std::vector<long long>>>& blocks) {
  std::vector<Subspace<F>> entries;
  for (const auto& rows : blocks) {
    Matrix<F> m(field, 0, dim);
    for (const auto& r : rows) {
      typename Matrix<F>::Row row;
      for (long long v : r) row.push_back(field.from_int(v));
      m.append_row(row);
    }
    entries.push_back(Subspace<F>::span_of(std::move(m)));
  }
  return SubspaceTuple<F>(field, dim, std::move(entries));
}

}  // namespace detail

/// Line-oriented tuple document: `field rational|gf <p>`, `dim <d>`, then
/// `subspace` blocks of integer generator rows. '#' starts a comment.
inline AnyTuple parse_tuple_file(const std::string& text) {
  constexpr const char* kDoc = "tuple file";
  std::optional<FieldSpec> field;
  std::optional<std::size_t> dim;
  std::vector<std::vector<std::vector<long long>>> blocks;
  bool in_subspace = false;

  for (const detail::FileLine& line : detail::content_lines(text)) {
    auto toks = detail::tokenize(line.text);
    const std::string& head = toks.front().text;
    if (head == "field") {
      if (field) detail::file_error(kDoc, line, "duplicate field line");
      if (dim || in_subspace)
        detail::file_error(kDoc, line, "field line must come first");
      if (toks.size() == 2 && toks[1].text == "rational") {
        field = FieldSpec::rationals();
      } else if (toks.size() == 3 && toks[1].text == "gf") {
        long long p = detail::parse_integer(kDoc, line, toks[2]);
        try {
          field = FieldSpec::gf(p);
        } catch (const InputError& e) {
          detail::file_error(kDoc, line, e.what());
        }
      } else {
        detail::file_error(kDoc, line,
                           "expected 'field rational' or 'field gf <p>'");
      }
    } else if (head == "dim") {
      if (!field) detail::file_error(kDoc, line, "dim before field line");
      if (dim) detail::file_error(kDoc, line, "duplicate dim line");
      if (in_subspace) detail::file_error(kDoc, line, "dim after subspaces");
      if (toks.size() != 2)
        detail::file_error(kDoc, line, "expected 'dim <d>'");
      long long d = detail::parse_integer(kDoc, line, toks[1]);
      if (d < 0 || d > 64)
        detail::file_error(kDoc, line, "dim must be between 0 and 64");
      dim = static_cast<std::size_t>(d);
    } else if (head == "subspace") {
      if (!field || !dim)
        detail::file_error(kDoc, line, "subspace before field/dim lines");
      if (toks.size() != 1)
        detail::file_error(kDoc, line, "subspace line takes no arguments");
      in_subspace = true;
      blocks.emplace_back();
    } else {
      if (!in_subspace)
        detail::file_error(
            kDoc, line,
            "expected 'field', 'dim' or 'subspace', got '" + head + "'");
      std::vector<long long> row;
      for (const auto& tok : toks)
        row.push_back(detail::parse_integer(kDoc, line, tok));
      if (row.size() != *dim)
        detail::file_error(kDoc, line,
                           "row has " + std::to_string(row.size()) +
                               " entries, expected " + std::to_string(*dim));
      blocks.back().push_back(std::move(row));
    }
  }
  if (!field) throw InputError("tuple file: missing field line");
  if (!dim) throw InputError("tuple file: missing dim line");

  if (field->kind == FieldSpec::Kind::rationals)
    return detail::build_parsed_tuple(RationalField{}, *dim, blocks);
  return detail::build_parsed_tuple(PrimeField(field->p), *dim, blocks);
}

namespace detail {

inline std::string field_header(const RationalField&) {
  return "field rational";
}

inline std::string field_header(const PrimeField& f) {
  return "field gf " + std::to_string(f.p);
}

inline std::string integer_row(const RationalField&,
                               const Matrix<RationalField>& basis,
                               std::size_t r) {
  namespace mp = boost::multiprecision;
  mp::cpp_int scale = 1;
  for (std::size_t c = 0; c < basis.cols(); ++c)
    scale = mp::lcm(scale, mp::denominator(basis.at(r, c)));
  std::string out;
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    mp::cpp_int v = mp::numerator(basis.at(r, c)) *
                    (scale / mp::denominator(basis.at(r, c)));
    if (c) out += ' ';
    out += v.str();
  }
  return out;
}

inline std::string integer_row(const PrimeField&,
                               const Matrix<PrimeField>& basis,
                               std::size_t r) {
  std::string out;
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    if (c) out += ' ';
    out += std::to_string(basis.at(r, c));
  }
  return out;
}

}  // namespace detail

/// Inverse of parse_tuple_file up to choice of generators: the canonical
/// basis rows are written with denominators cleared.
template <class F>
std::string serialize_tuple(const SubspaceTuple<F>& t) {
  std::string out = detail::field_header(t.field()) + "\n";
  out += "dim " + std::to_string(t.ambient_dim()) + "\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += "subspace\n";
    const Matrix<F>& basis = t.entry(i).basis();
    for (std::size_t r = 0; r < basis.rows(); ++r)
      out += detail::integer_row(t.field(), basis, r) + "\n";
  }
  return out;
}

inline std::string serialize_tuple(const AnyTuple& t) {
  return with_tuple(t, [](const auto& tt) { return serialize_tuple(tt); });
}

/// Poset document: `element <label>` lines followed by `cover <a> <b>`
/// lines referring to labels. '#' starts a comment.
inline Poset parse_poset_file(const std::string& text) {
  constexpr const char* kDoc = "poset file";
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> covers;

  for (const detail::FileLine& line : detail::content_lines(text)) {
    auto toks = detail::tokenize(line.text);
    const std::string& head = toks.front().text;
    if (head == "element") {
      if (toks.size() != 2)
        detail::file_error(kDoc, line, "expected 'element <label>'");
      auto [it, fresh] = index.emplace(toks[1].text, labels.size());
      if (!fresh)
        detail::file_error(kDoc, line,
                           "duplicate element '" + toks[1].text + "'");
      labels.push_back(toks[1].text);
    } else if (head == "cover") {
      if (toks.size() != 3)
        detail::file_error(kDoc, line, "expected 'cover <a> <b>'");
      std::size_t pair[2];
      for (int k = 0; k < 2; ++k) {
        auto it = index.find(toks[k + 1].text);
        if (it == index.end())
          detail::file_error(kDoc, line,
                             "unknown element '" + toks[k + 1].text + "'");
        pair[k] = it->second;
      }
      covers.emplace_back(pair[0], pair[1]);
    } else {
      detail::file_error(kDoc, line,
                         "expected 'element' or 'cover', got '" + head + "'");
    }
  }
  return Poset::from_covers(std::move(labels), covers);
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

/// Hasse diagram with edges pointing upward.
inline std::string dot_poset(const Poset& p) {
  std::string out = "digraph poset {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    out += "  " + detail::dot_quote(p.label(i)) + ";\n";
  for (auto [a, b] : p.cover_pairs())
    out += "  " + detail::dot_quote(p.label(a)) + " -> " +
           detail::dot_quote(p.label(b)) + ";\n";
  out += "}\n";
  return out;
}

inline std::string dot_lattice(const LatticeOfSets& lat) {
  std::string out = "digraph lattice {\n  rankdir=BT;\n";
  for (IndexSet s : lat.members())
    out += "  " + detail::dot_quote(s.str()) + ";\n";
  for (auto [a, b] : lat.cover_pairs())
    out += "  " + detail::dot_quote(lat.member(a).str()) + " -> " +
           detail::dot_quote(lat.member(b).str()) + ";\n";
  out += "}\n";
  return out;
}

inline std::string dot_flats(const FlatLattice& fl) {
  std::string out = "digraph flats {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < fl.size(); ++i)
    out += "  " + detail::dot_quote(fl.flats[i].str()) + " [label=" +
           detail::dot_quote(fl.flats[i].str() + " rk " +
                             std::to_string(fl.ranks[i])) +
           "];\n";
  for (auto [a, b] : fl.tables.cover_pairs())
    out += "  " + detail::dot_quote(fl.flats[a].str()) + " -> " +
           detail::dot_quote(fl.flats[b].str()) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace minkmat
