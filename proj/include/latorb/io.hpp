#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "latorb/error.hpp"
#include "latorb/isometry.hpp"
#include "latorb/oracle.hpp"
#include "latorb/pipeline.hpp"

// File formats.
//
// Generators:  {"n": 2, "generators": [
//                 {"type": "translation", "v": [1, 1]},
//                 {"type": "negation", "signs": [-1, -1]},
//                 {"type": "permutation", "perm": [1, 0]},
//                 {"type": "isometry", "v": [..], "matrix": [[..], ..]}]}
// Domain:      {"points": [[0, 0], [1, 0]]}  or
//              {"box": {"min": [0, 0], "max": [1, 1]}}
//
// Integers may have any number of digits, written either as bare JSON
// numbers or as decimal strings. Fractional or exponent numbers are errors.

namespace latorb::io {

using json = nlohmann::json;

namespace detail {

/// DOM builder that keeps integers too large for 64 bits as their decimal
/// text instead of degrading them to doubles.
class BigIntDomParser : public nlohmann::detail::json_sax_dom_parser<json> {
 public:
  using Base = nlohmann::detail::json_sax_dom_parser<json>;
  using Base::Base;

  bool number_float(json::number_float_t, const std::string& text) {
    const bool integral =
        !text.empty() &&
        std::all_of(text.begin() + (text.front() == '-' ? 1 : 0), text.end(),
                    [](char c) { return c >= '0' && c <= '9'; });
    if (!integral) {
      bad_number = text;
      return false;
    }
    std::string copy = text;
    return Base::string(copy);
  }

  std::string bad_number;
};

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                       std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline bool is_decimal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

inline json parse_json(std::string_view text) {
  json root;
  detail::BigIntDomParser sax(root, true);
  try {
    const bool ok = json::sax_parse(text.begin(), text.end(), &sax);
    if (!ok)
      fail(ErrorCode::ParseError,
           "non-integer number '" + sax.bad_number + "' (no floats allowed)");
  } catch (const json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte);
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                    std::to_string(col) + ": " + e.what());
  }
  return root;
}

inline Int to_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    return Int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (detail::is_decimal(s)) return Int(s);
  }
  fail(ErrorCode::ParseError, where + ": expected an integer");
}

inline std::vector<Int> to_int_vector(const json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorCode::ParseError, where + ": expected an array");
  std::vector<Int> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(to_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline const json& member(const json& obj, const char* key,
                          const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    fail(ErrorCode::ParseError, where + ": missing \"" + key + "\"");
  return obj.at(key);
}

inline std::size_t to_dim(const json& j, const std::string& where) {
  Int v = to_int(j, where);
  if (v < 0 || v > 1'000'000)
    fail(ErrorCode::ParseError, where + ": dimension out of range");
  return static_cast<std::size_t>(v);
}

inline GeneratingSet parse_generators(std::string_view text) {
  const json doc = parse_json(text);
  const std::size_t n = to_dim(member(doc, "n", "generators file"), "n");
  const json& list = member(doc, "generators", "generators file");
  if (!list.is_array())
    fail(ErrorCode::ParseError, "\"generators\" must be an array");

  std::vector<RawGenerator> raw;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const json& g = list[k];
    const std::string where = "generator " + std::to_string(k);
    const json& type_j = member(g, "type", where);
    if (!type_j.is_string())
      fail(ErrorCode::ParseError, where + ": \"type\" must be a string");
    const std::string type = type_j.get<std::string>();
    RawGenerator r;
    r.label = type;
    auto need_len = [&](std::size_t len, const char* what) {
      if (len != n)
        fail(ErrorCode::DimensionMismatch,
             where + ": " + what + " has length " + std::to_string(len) +
                 ", expected " + std::to_string(n));
    };
    if (type == "translation") {
      r.v = to_int_vector(member(g, "v", where), where + ".v");
      need_len(r.v.size(), "v");
    } else if (type == "negation") {
      auto signs = to_int_vector(member(g, "signs", where), where + ".signs");
      need_len(signs.size(), "signs");
      r.matrix.assign(n, std::vector<Int>(n));
      for (std::size_t i = 0; i < n; ++i) {
        if (signs[i] != 1 && signs[i] != -1)
          fail(ErrorCode::InvalidRotation,
               where + ": signs must be +1 or -1");
        r.matrix[i][i] = signs[i];
      }
    } else if (type == "permutation") {
      auto perm = to_int_vector(member(g, "perm", where), where + ".perm");
      need_len(perm.size(), "perm");
      std::vector<bool> seen(n, false);
      r.matrix.assign(n, std::vector<Int>(n));
      for (std::size_t i = 0; i < n; ++i) {
        if (perm[i] < 0 || perm[i] >= n ||
            seen[static_cast<std::size_t>(perm[i])])
          fail(ErrorCode::InvalidRotation,
               where + ": perm is not a permutation of 0.." +
                   std::to_string(n == 0 ? 0 : n - 1));
        seen[static_cast<std::size_t>(perm[i])] = true;
        r.matrix[i][static_cast<std::size_t>(perm[i])] = 1;
      }
    } else if (type == "isometry") {
      if (g.contains("v")) {
        r.v = to_int_vector(g.at("v"), where + ".v");
        need_len(r.v.size(), "v");
      }
      if (g.contains("matrix")) {
        const json& m = g.at("matrix");
        if (!m.is_array())
          fail(ErrorCode::ParseError, where + ".matrix: expected an array");
        need_len(m.size(), "matrix");
        for (std::size_t i = 0; i < m.size(); ++i) {
          r.matrix.push_back(to_int_vector(
              m[i], where + ".matrix[" + std::to_string(i) + "]"));
          need_len(r.matrix.back().size(), "matrix row");
        }
      }
    } else {
      fail(ErrorCode::ParseError, where + ": unknown type \"" + type + "\"");
    }
    raw.push_back(std::move(r));
  }
  return validate_atomic(raw, n);
}

/// All integer points of [lo, hi].
inline std::vector<Point> expand_box(const Point& lo, const Point& hi,
                                     std::uint64_t box_cap = kDefaultBoxCap) {
  if (lo.size() != hi.size())
    fail(ErrorCode::DimensionMismatch, "box min and max differ in length");
  Int count = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i])
      fail(ErrorCode::InvalidDomain,
           "box has min > max in coordinate " + std::to_string(i));
    count *= hi[i] - lo[i] + 1;
  }
  if (count > box_cap)
    fail(ErrorCode::BoxTooLarge, "box has " + count.str() +
                                     " points, cap is " +
                                     std::to_string(box_cap));
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  Point cur = lo;
  for (;;) {
    out.push_back(cur);
    std::size_t i = lo.size();
    while (i > 0) {
      --i;
      if (cur[i] < hi[i]) {
        ++cur[i];
        break;
      }
      cur[i] = lo[i];
      if (i == 0) return out;
    }
    if (lo.size() == 0) return out;
  }
}

inline std::vector<Point> parse_domain(std::string_view text, std::size_t n,
                                       std::uint64_t box_cap = kDefaultBoxCap) {
  const json doc = parse_json(text);
  if (!doc.is_object())
    fail(ErrorCode::ParseError, "domain file must be a JSON object");
  const bool has_points = doc.contains("points");
  const bool has_box = doc.contains("box");
  if (has_points == has_box)
    fail(ErrorCode::ParseError,
         "domain file needs exactly one of \"points\" or \"box\"");
  if (has_box) {
    const json& box = doc.at("box");
    Point lo(to_int_vector(member(box, "min", "box"), "box.min"));
    Point hi(to_int_vector(member(box, "max", "box"), "box.max"));
    if (lo.size() != n || hi.size() != n)
      fail(ErrorCode::DimensionMismatch,
           "box bounds must have length " + std::to_string(n));
    return expand_box(lo, hi, box_cap);
  }
  const json& pts = doc.at("points");
  if (!pts.is_array())
    fail(ErrorCode::ParseError, "\"points\" must be an array");
  std::vector<Point> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Point p(to_int_vector(pts[i], "points[" + std::to_string(i) + "]"));
    if (p.size() != n)
      fail(ErrorCode::DimensionMismatch,
           "points[" + std::to_string(i) + "] has length " +
               std::to_string(p.size()) + ", expected " + std::to_string(n));
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// "0..1,-2..2" -> box [0,1] x [-2,2]. Axes are separated by commas or
/// whitespace.
inline std::vector<Point> parse_box_spec(std::string_view spec, std::size_t n,
                                         std::uint64_t box_cap = kDefaultBoxCap) {
  std::vector<Int> lo, hi;
  std::string s(spec);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::string axis;
  while (in >> axis) {
    const auto dots = axis.find("..");
    if (dots == std::string::npos)
      fail(ErrorCode::ParseError, "box axis '" + axis + "' is not min..max");
    const std::string a = axis.substr(0, dots), b = axis.substr(dots + 2);
    if (!detail::is_decimal(a) || !detail::is_decimal(b))
      fail(ErrorCode::ParseError, "box axis '" + axis + "' is not min..max");
    lo.emplace_back(a);
    hi.emplace_back(b);
  }
  if (lo.size() != n)
    fail(ErrorCode::DimensionMismatch, "box spec has " +
                                           std::to_string(lo.size()) +
                                           " axes, expected " +
                                           std::to_string(n));
  return expand_box(Point(lo), Point(hi), box_cap);
}

namespace detail {

inline void write_point(std::string& out, const Point& p) {
  out += '[';
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += p[i].str();
  }
  out += ']';
}

inline json int_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline json point_json(const Point& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back(int_json(c));
  return a;
}

}  // namespace detail

/// Result document; classes sorted by label, members sorted.
inline std::string write_json(const Stage1& stage1,
                              const OrbitLabeling& labeling) {
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(stage1.dim()) + ",\n";
  out += "  \"rank_m\": " + std::to_string(stage1.lattice().rank()) + ",\n";
  out += "  \"basis_rows\": [";
  for (std::size_t j = 0; j < stage1.lattice().rank(); ++j) {
    if (j) out += ',';
    detail::write_point(out, stage1.lattice().hnf_rows[j]);
  }
  out += "],\n";
  out += "  \"rotation_order\": " + stage1.rotation_order().str() + ",\n";
  out += "  \"classes\": [";
  for (std::size_t c = 0; c < labeling.classes.size(); ++c) {
    const auto& cls = labeling.classes[c];
    out += c ? ",\n    " : "\n    ";
    out += "{\"label\": ";
    detail::write_point(out, cls.label);
    out += ", \"members\": [";
    for (std::size_t i = 0; i < cls.members.size(); ++i) {
      if (i) out += ',';
      detail::write_point(out, cls.members[i]);
    }
    out += "]}";
  }
  out += labeling.classes.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

/// One "x<TAB>label" line per point of Z, coordinates comma-separated,
/// sorted by x.
inline std::string write_tsv(const OrbitLabeling& labeling) {
  auto coords = [](const Point& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) s += ',';
      s += p[i].str();
    }
    return s;
  };
  std::string out;
  for (std::size_t i = 0; i < labeling.points.size(); ++i) {
    out += coords(labeling.points[i]);
    out += '\t';
    out += coords(labeling.classes[labeling.class_of[i]].label);
    out += '\n';
  }
  return out;
}

/// Canonical generator document; also the Stage-1 cache key.
inline json generators_json(const GeneratingSet& s) {
  json list = json::array();
  for (const auto& t : s.translations)
    list.push_back({{"type", "translation"},
                    {"v", detail::point_json(t.translation_vector())}});
  for (const auto& g : s.negations) {
    json signs = json::array();
    for (auto v : g.rotation_part().signs()) signs.push_back(int(v));
    list.push_back({{"type", "negation"}, {"signs", signs}});
  }
  for (const auto& g : s.permutations) {
    json perm = json::array();
    for (auto v : g.rotation_part().perm()) perm.push_back(v);
    list.push_back({{"type", "permutation"}, {"perm", perm}});
  }
  return {{"n", s.n}, {"generators", list}};
}

inline constexpr std::string_view kStage1Format = "latorb-stage1/1";

/// Stage-1 data that does not depend on the merge mode.
inline std::string write_stage1(const Stage1& s) {
  json basis = json::array();
  for (const auto& r : s.negation_basis.rows) basis.push_back(r.to_string());
  json perms = json::array();
  for (const auto& p : s.perms.elements) {
    json row = json::array();
    for (auto v : p.perm()) row.push_back(v);
    perms.push_back(std::move(row));
  }
  json rows = json::array();
  for (const auto& r : s.lattice().hnf_rows)
    rows.push_back(detail::point_json(r));
  json doc = {{"format", kStage1Format},
              {"generators", generators_json(s.gens)},
              {"negation_basis", basis},
              {"perm_group", perms},
              {"basis_rows", rows}};
  return doc.dump() + "\n";
}

/// Loads a cache written by write_stage1. Returns nullopt when the cache
/// belongs to a different generating set.
inline std::optional<Stage1> read_stage1(std::string_view text,
                                         const GeneratingSet& gens, Mode mode,
                                         std::size_t threads = 1) {
  const json doc = parse_json(text);
  if (!doc.is_object() || doc.value("format", "") != kStage1Format)
    fail(ErrorCode::ParseError, "not a stage-1 cache file");
  if (member(doc, "generators", "cache") != generators_json(gens))
    return std::nullopt;
  const std::size_t n = gens.n;

  std::vector<Gf2Vector> neg_rows;
  for (const auto& r : member(doc, "negation_basis", "cache")) {
    if (!r.is_string() || r.get<std::string>().size() != n)
      fail(ErrorCode::ParseError, "cache: bad negation basis row");
    neg_rows.push_back(Gf2Vector::from_string(r.get<std::string>()));
  }
  Gf2Basis nb = ge_b(neg_rows, n);
  if (nb.rows != neg_rows)
    fail(ErrorCode::ParseError, "cache: negation basis is not in RREF");

  PermGroup perms{n, {}};
  for (const auto& row : member(doc, "perm_group", "cache")) {
    std::vector<std::uint32_t> p;
    for (const auto& v : to_int_vector(row, "cache.perm_group")) {
      if (v < 0 || v >= n)
        fail(ErrorCode::ParseError, "cache: bad permutation entry");
      p.push_back(static_cast<std::uint32_t>(v));
    }
    if (p.size() != n) fail(ErrorCode::ParseError, "cache: bad permutation");
    perms.elements.push_back(SignedPermutation::permutation(std::move(p)));
  }
  if (perms.elements.empty() ||
      !std::is_sorted(perms.elements.begin(), perms.elements.end()))
    fail(ErrorCode::ParseError, "cache: permutation group is not sorted");

  std::vector<Point> rows;
  for (const auto& r : member(doc, "basis_rows", "cache")) {
    rows.emplace_back(to_int_vector(r, "cache.basis_rows"));
    if (rows.back().size() != n)
      fail(ErrorCode::ParseError, "cache: basis row has wrong length");
  }
  LatticeBasis lattice = hnf_reduce(rows, n);
  if (lattice.hnf_rows != rows)
    fail(ErrorCode::ParseError, "cache: basis rows are not in HNF");
  return Stage1::assemble(gens, mode, std::move(nb), std::move(perms),
                          std::move(lattice), threads);
}

inline std::string error_json(const Error& e) {
  json j = {{"error", std::string(to_string(e.code()))},
            {"message", e.what()}};
  return j.dump();
}

}  // namespace latorb::io
