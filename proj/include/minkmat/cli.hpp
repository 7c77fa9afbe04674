#pragma once

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minkmat/io.hpp"
#include "minkmat/suite.hpp"

namespace minkmat {

/// Flat key/value report; keys use '.' to form a tree for --json.
using Report = std::map<std::string, std::string>;

namespace detail {

inline std::string render_text(const Report& r) {
  std::string out;
  for (const auto& [key, value] : r) out += key + ": " + value + "\n";
  return out;
}

inline std::string render_json(const Report& r) {
  nlohmann::json root = nlohmann::json::object();
  for (const auto& [key, value] : r) {
    nlohmann::json* node = &root;
    std::size_t pos = 0;
    for (std::size_t dot = key.find('.'); dot != std::string::npos;
         dot = key.find('.', pos)) {
      node = &(*node)[key.substr(pos, dot - pos)];
      pos = dot + 1;
    }
    (*node)[key.substr(pos)] = value;
  }
  return root.dump(2) + "\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
  out.flush();
  if (!out) throw InputError("cannot write file: " + path);
}

inline std::size_t env_subset_cap() {
  const char* v = std::getenv("MINKMAT_SUBSET_CAP");
  if (!v) return kDefaultSubsetCap;
  std::size_t value = 0;
  const char* end = v + std::string(v).size();
  auto [ptr, ec] = std::from_chars(v, end, value);
  if (ec != std::errc{} || ptr != end || value < 1 || value > 30)
    throw InputError(
        "MINKMAT_SUBSET_CAP must be an integer between 1 and 30, got '" +
        std::string(v) + "'");
  return value;
}

inline FieldSpec parse_field_flag(const std::string& s) {
  if (s == "rational") return FieldSpec::rationals();
  if (s.size() > 2 && s.compare(0, 2, "gf") == 0) {
    long long p = 0;
    const char* begin = s.data() + 2;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, p);
    if (ec == std::errc{} && ptr == end) return FieldSpec::gf(p);
  }
  throw InputError("unknown field '" + s +
                   "', expected 'rational' or 'gf<p>'");
}

inline std::string list_or_none(const std::string& joined) {
  return joined.empty() ? "none" : joined;
}

inline std::string join_sets(const std::vector<IndexSet>& sets) {
  std::string out;
  for (IndexSet s : sets) {
    if (!out.empty()) out += ' ';
    out += s.str();
  }
  return out;
}

inline std::string join_labels(const Poset& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += p.label(i);
  }
  return out;
}

inline std::string join_covers(const Poset& p) {
  std::string out;
  for (auto [a, b] : p.cover_pairs()) {
    if (!out.empty()) out += ' ';
    out += p.label(a) + "<" + p.label(b);
  }
  return out;
}

template <class F>
std::string matrix_str(const F& f, const Matrix<F>& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += f.str(m.at(r, c));
    }
  }
  return out;
}

template <class F>
Report analyze_report(const SubspaceTuple<F>& t, bool subsets,
                      std::size_t cap) {
  MinkowskiMatroid<F> m(t, cap);
  IndexSet ground = m.ground();
  Report r;
  r["field"] = t.field().spec().name();
  r["dim"] = std::to_string(t.ambient_dim());
  r["n"] = std::to_string(t.size());
  r["rank"] = std::to_string(m.rank(ground));
  r["span_dim"] = std::to_string(m.span_dim(ground));
  r["defect"] = std::to_string(m.defect(ground));
  r["basis_defect"] =
      ground.empty() ? "0" : std::to_string(m.basis_defect());
  if (ground.empty()) {
    r["independent"] = "true";
    r["bk"] = "true";
    r["essential"] = "false";
    r["irreducible"] = "false";
  } else {
    TupleClass c = classify(t, ground, cap);
    r["independent"] = c.independent ? "true" : "false";
    r["bk"] = c.bk ? "true" : "false";
    r["essential"] = c.essential ? "true" : "false";
    r["irreducible"] = c.irreducible ? "true" : "false";
  }
  r["bases"] = list_or_none(join_sets(m.bases()));
  r["circuits"] = list_or_none(join_sets(m.circuits()));
  r["loops"] = m.loops().str();
  r["coloops"] = m.coloops().str();
  if (auto me = m.maximal_essential_subtuple()) {
    r["max_essential.set"] = me->str();
    SubspaceTuple<F> q = t.quotient(*me);
    bool indep = true;
    if (q.size() > 0) {
      MinkowskiMatroid<F> mq(q, cap);
      indep = mq.is_independent(mq.ground());
    }
    r["max_essential.quotient_independent"] = indep ? "true" : "false";
  } else {
    r["max_essential.set"] = "none";
    r["max_essential.quotient_independent"] = "n/a";
  }
  if (subsets) {
    for_each_subset(ground, [&](IndexSet s) {
      if (s.empty()) return;
      TupleClass c = classify(t, s, cap);
      std::string prefix = "subset." + s.str() + ".";
      r[prefix + "defect"] = std::to_string(c.defect);
      r[prefix + "independent"] = c.independent ? "true" : "false";
      r[prefix + "bk"] = c.bk ? "true" : "false";
      r[prefix + "irreducible"] = c.irreducible ? "true" : "false";
      r[prefix + "essential"] = c.essential ? "true" : "false";
    });
  }
  return r;
}

template <class F>
Report bk_report(const SubspaceTuple<F>& t, const std::string& dot_lattice_path,
                 const std::string& dot_poset_path, std::size_t cap) {
  Report r;
  r["field"] = t.field().spec().name();
  r["dim"] = std::to_string(t.ambient_dim());
  r["n"] = std::to_string(t.size());

  LatticeOfSets lat = bk_sublattice(t, cap);
  r["lattice.size"] = std::to_string(lat.size());
  r["lattice.members"] = join_sets(lat.members());

  BkDecomposition<F> dec = bk_decomposition(t, cap);
  r["poset.size"] = std::to_string(dec.poset.size());
  r["poset.elements"] = list_or_none(join_labels(dec.poset));
  r["poset.covers"] = list_or_none(join_covers(dec.poset));
  r["decomposition.blocks"] = list_or_none(join_sets(dec.blocks));
  r["decomposition.ideals"] = list_or_none(join_sets(dec.ideal_sets));
  std::string shapes;
  for (const SubspaceTuple<F>& g : dec.graded) {
    if (!shapes.empty()) shapes += ' ';
    shapes += std::to_string(g.size()) + "x" +
              std::to_string(g.span_dim(g.ground()));
  }
  r["decomposition.graded_shapes"] = list_or_none(shapes);

  Filtration<F> filt =
      maximal_bk_filtration(t, dec.poset.canonical_linear_extension(), cap);
  r["filtration.chain"] = join_sets(filt.chain);

  r["coordinate_basis"] =
      list_or_none(matrix_str(t.field(), coordinate_basis(t, cap)));

  if (!dot_lattice_path.empty()) write_file(dot_lattice_path, dot_lattice(lat));
  if (!dot_poset_path.empty()) write_file(dot_poset_path, dot_poset(dec.poset));
  return r;
}

template <class F>
Report polymatroid_report(const SubspaceTuple<F>& t, bool want_flats,
                          bool want_dual, bool want_partition,
                          std::uint64_t point_cap,
                          const std::string& dot_flats_path,
                          std::size_t cap) {
  Report r;
  r["field"] = t.field().spec().name();
  r["dim"] = std::to_string(t.ambient_dim());
  r["n"] = std::to_string(t.size());
  r["rank"] = std::to_string(t.span_dim(t.ground()));

  if (want_flats || !dot_flats_path.empty()) {
    FlatLattice fl = flats(t, cap);
    if (want_flats) {
      r["flats.count"] = std::to_string(fl.size());
      r["flats.list"] = join_sets(fl.flats);
      std::string ranks;
      for (int rk : fl.ranks) {
        if (!ranks.empty()) ranks += ' ';
        ranks += std::to_string(rk);
      }
      r["flats.ranks"] = ranks;
      r["flats.distributive"] = fl.distributive() ? "true" : "false";
    }
    if (!dot_flats_path.empty()) write_file(dot_flats_path, dot_flats(fl));
  }

  if (want_dual) {
    dual_realization(t, cap);
    r["dual.rank_equality"] = "PASS";
  }

  if (want_partition) {
    if constexpr (!std::is_same_v<F, PrimeField>) {
      throw InputError("--partition requires a gf<p> tuple");
    } else {
      DualPartition part = dual_partition(t, point_cap, cap);
      r["partition.p"] = std::to_string(part.p);
      r["partition.total_points"] = std::to_string(part.total_points);
      for (std::size_t i = 0; i < part.flat_lattice.size(); ++i)
        r["partition.block." + part.flat_lattice.flats[i].str()] =
            std::to_string(part.blocks[i].size());
    }
  }
  return r;
}

inline Report verify_report(const SuiteReport& report) {
  Report r;
  r["suite.cases"] = std::to_string(report.cases);
  r["suite.failures"] = std::to_string(report.total_failures());
  r["suite.result"] = report.ok() ? "PASS" : "FAIL";
  for (const auto& [name, stats] : report.checks) {
    std::string prefix = "check." + name + ".";
    r[prefix + "ran"] = std::to_string(stats.ran);
    r[prefix + "skipped"] = std::to_string(stats.skipped);
    r[prefix + "failed"] = std::to_string(stats.failed);
    if (stats.first_failure) {
      r[prefix + "first_case"] =
          std::to_string(stats.first_failure->case_index);
      r[prefix + "message"] = stats.first_failure->message;
    }
  }
  return r;
}

struct InflateRankGuard {
  bool saved = mutation_hooks().inflate_rank;
  ~InflateRankGuard() { mutation_hooks().inflate_rank = saved; }
};

inline void emit(const Report& r, bool json, const std::string& out_path,
                 std::ostream& out) {
  std::string rendered = json ? render_json(r) : render_text(r);
  if (out_path.empty())
    out << rendered;
  else
    write_file(out_path, rendered);
}

}  // namespace detail

/// Full command-line front end; returns the process exit code.
/// 0 = success, 1 = a verification check failed, 2 = input error.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"exact Minkowski-sum matroid toolkit for subspace tuples"};
  app.name("minkmat");
  app.require_subcommand(1);

  struct {
    std::string file;
    bool subsets = false;
    bool json = false;
    std::string out;
  } analyze;
  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "matroid report for a tuple file");
  analyze_cmd->add_option("file", analyze.file, "tuple file")->required();
  analyze_cmd->add_flag("--subsets", analyze.subsets,
                        "classify every nonempty subtuple");
  analyze_cmd->add_flag("--json", analyze.json, "emit JSON");
  analyze_cmd->add_option("--out", analyze.out, "write the report here");

  struct {
    std::string file;
    std::string dot_lattice;
    std::string dot_poset;
    bool json = false;
    std::string out;
  } bk;
  CLI::App* bk_cmd = app.add_subcommand(
      "bk", "BK-sublattice, Birkhoff poset and decomposition");
  bk_cmd->add_option("file", bk.file, "tuple file")->required();
  bk_cmd->add_option("--dot-lattice", bk.dot_lattice,
                     "write the lattice Hasse diagram as DOT");
  bk_cmd->add_option("--dot-poset", bk.dot_poset,
                     "write the poset Hasse diagram as DOT");
  bk_cmd->add_flag("--json", bk.json, "emit JSON");
  bk_cmd->add_option("--out", bk.out, "write the report here");

  struct {
    std::string file;
    std::string field = "rational";
    std::string out;
  } realize;
  CLI::App* realize_cmd = app.add_subcommand(
      "realize", "build a tuple whose Birkhoff poset is the given poset");
  realize_cmd->add_option("file", realize.file, "poset file")->required();
  realize_cmd->add_option("--field", realize.field,
                          "coefficient field: rational or gf<p>");
  realize_cmd->add_option("--out", realize.out, "write the tuple file here");

  struct {
    std::string file;
    bool flats = false;
    bool dual = false;
    bool partition = false;
    std::uint64_t point_cap = kDefaultPointCap;
    std::string dot_flats;
    bool json = false;
    std::string out;
  } poly;
  CLI::App* poly_cmd = app.add_subcommand(
      "polymatroid", "flat lattice, dual realization, dual-space partition");
  poly_cmd->add_option("file", poly.file, "tuple file")->required();
  poly_cmd->add_flag("--flats", poly.flats, "list the lattice of flats");
  poly_cmd->add_flag("--dual", poly.dual, "verify the dual rank equality");
  poly_cmd->add_flag("--partition", poly.partition,
                     "partition the dual space by flat (gf<p> only)");
  poly_cmd->add_option("--point-cap", poly.point_cap,
                       "largest dual space enumerated");
  poly_cmd->add_option("--dot-flats", poly.dot_flats,
                       "write the flat lattice Hasse diagram as DOT");
  poly_cmd->add_flag("--json", poly.json, "emit JSON");
  poly_cmd->add_option("--out", poly.out, "write the report here");

  struct {
    std::uint64_t seed = 1;
    std::size_t cases = 100;
    std::string field = "rational";
    std::size_t dim = 4;
    std::size_t n = 5;
    std::size_t max_gens = 3;
    bool inject_rank_bug = false;
    std::string counterexample_out;
    bool json = false;
    std::string out;
  } verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the randomized theorem checks");
  verify_cmd->add_option("--seed", verify.seed, "generator seed");
  verify_cmd->add_option("--cases", verify.cases, "number of random tuples");
  verify_cmd->add_option("--field", verify.field,
                         "coefficient field: rational or gf<p>");
  verify_cmd->add_option("--dim", verify.dim, "largest ambient dimension");
  verify_cmd->add_option("--n", verify.n, "largest tuple size");
  verify_cmd->add_option("--max-gens", verify.max_gens,
                         "largest generator count per subspace");
  verify_cmd->add_flag("--inject-rank-bug", verify.inject_rank_bug,
                       "mutate the rank function to prove the suite bites");
  verify_cmd->add_option("--counterexample-out", verify.counterexample_out,
                         "write the first failing tuple here");
  verify_cmd->add_flag("--json", verify.json, "emit JSON");
  verify_cmd->add_option("--out", verify.out, "write the report here");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::size_t cap = detail::env_subset_cap();
    if (analyze_cmd->parsed()) {
      AnyTuple t = parse_tuple_file(detail::read_file(analyze.file));
      Report r = with_tuple(t, [&](const auto& tt) {
        return detail::analyze_report(tt, analyze.subsets, cap);
      });
      detail::emit(r, analyze.json, analyze.out, out);
    } else if (bk_cmd->parsed()) {
      AnyTuple t = parse_tuple_file(detail::read_file(bk.file));
      Report r = with_tuple(t, [&](const auto& tt) {
        return detail::bk_report(tt, bk.dot_lattice, bk.dot_poset, cap);
      });
      detail::emit(r, bk.json, bk.out, out);
    } else if (realize_cmd->parsed()) {
      Poset p = parse_poset_file(detail::read_file(realize.file));
      FieldSpec field = detail::parse_field_flag(realize.field);
      std::string text;
      if (field.kind == FieldSpec::Kind::rationals)
        text = serialize_tuple(realize_poset(p, RationalField{}, cap));
      else
        text = serialize_tuple(realize_poset(p, PrimeField(field.p), cap));
      if (realize.out.empty())
        out << text;
      else
        detail::write_file(realize.out, text);
    } else if (poly_cmd->parsed()) {
      if (!poly.flats && !poly.dual && !poly.partition) {
        poly.flats = true;
        poly.dual = true;
      }
      AnyTuple t = parse_tuple_file(detail::read_file(poly.file));
      Report r = with_tuple(t, [&](const auto& tt) {
        return detail::polymatroid_report(tt, poly.flats, poly.dual,
                                          poly.partition, poly.point_cap,
                                          poly.dot_flats, cap);
      });
      detail::emit(r, poly.json, poly.out, out);
    } else if (verify_cmd->parsed()) {
      GenConfig cfg;
      cfg.field = detail::parse_field_flag(verify.field);
      cfg.ambient_dim = verify.dim;
      cfg.n = verify.n;
      cfg.max_generators = verify.max_gens;
      cfg.seed = verify.seed;
      cfg.cases = verify.cases;
      detail::InflateRankGuard guard;
      if (verify.inject_rank_bug) mutation_hooks().inflate_rank = true;
      SuiteReport report = run_suite(cfg);
      detail::emit(detail::verify_report(report), verify.json, verify.out,
                   out);
      if (!report.ok()) {
        if (!verify.counterexample_out.empty()) {
          for (const auto& [name, stats] : report.checks)
            if (stats.first_failure) {
              detail::write_file(verify.counterexample_out,
                                 stats.first_failure->tuple_text);
              break;
            }
        }
        return 1;
      }
    }
  } catch (const InternalCheckError& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace minkmat
