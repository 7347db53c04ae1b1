#ifndef QDIST_RUNNER_HPP
#define QDIST_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qdist/config.hpp"
#include "qdist/io.hpp"
#include "qdist/random.hpp"
#include "qdist/report.hpp"
#include "qdist/sharpness.hpp"
#include "qdist/theorem.hpp"
#include "qdist/verify.hpp"

namespace qdist {

enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitUsage = 2 };

struct RunResult {
  int exit_code = kExitPass;
  std::string report;   // the file payload (JSON or CSV)
  std::string summary;  // human-readable lines
};

/// Parsed --set value.
struct SetSource {
  enum class Kind { File, Random, Sharpness } kind = Kind::File;
  std::string path;
  std::uint64_t min_size = 0, max_size = 0;
  SharpnessKind sharpness = SharpnessKind::Even;
  double delta = 0.25;
};

inline SetSource parse_set_source(const std::string& text) {
  SetSource s;
  if (text.empty()) throw InvalidParameter("a point set is required (--set PATH | random:<size> | sharpness:<kind>)");
  if (text.rfind("random:", 0) == 0) {
    s.kind = SetSource::Kind::Random;
    const auto body = text.substr(7);
    if (const auto dots = body.find(".."); dots != std::string::npos) {
      s.min_size = detail::parse_uint(body.substr(0, dots), "set size");
      s.max_size = detail::parse_uint(body.substr(dots + 2), "set size");
      if (s.min_size > s.max_size) throw InvalidParameter("random size range is empty: '" + text + "'");
    } else {
      s.min_size = s.max_size = detail::parse_uint(body, "set size");
    }
    return s;
  }
  if (text.rfind("sharpness:", 0) == 0) {
    s.kind = SetSource::Kind::Sharpness;
    const auto parts = detail::split(text.substr(10), ':');
    if (parts.empty()) throw InvalidParameter("missing sharpness kind in '" + text + "'");
    if (parts[0] == "even") s.sharpness = SharpnessKind::Even;
    else if (parts[0] == "odd-iii") s.sharpness = SharpnessKind::OddIII;
    else if (parts[0] == "odd-ii" || parts[0] == "odd-ii-delta") s.sharpness = SharpnessKind::OddII;
    else throw InvalidParameter("unknown sharpness kind '" + parts[0] + "' (even | odd-iii | odd-ii)");
    for (std::size_t i = 1; i < parts.size(); ++i) {
      if (parts[i].rfind("delta=", 0) != 0) throw InvalidParameter("unknown sharpness parameter '" + parts[i] + "'");
      try {
        std::size_t used = 0;
        s.delta = std::stod(parts[i].substr(6), &used);
        if (used != parts[i].size() - 6) throw InvalidParameter("");
      } catch (const std::exception&) {
        throw InvalidParameter("malformed delta in '" + text + "'");
      }
    }
    return s;
  }
  s.path = text;
  return s;
}

/// "all" or a comma-separated list of non-zero element indices.
inline std::vector<Element> parse_ratio_list(const Field& f, const std::string& text) {
  std::vector<Element> out;
  if (text == "all") {
    for (std::uint32_t r = 1; r < f.q(); ++r) out.push_back(Element{r});
    return out;
  }
  for (const auto& item : detail::split(text, ',')) {
    const auto r = detail::parse_element(f, item);
    detail::check_ratio(r);
    out.push_back(r);
  }
  if (out.empty()) throw InvalidParameter("empty r list");
  return out;
}

namespace detail {

struct Workspace {
  FieldPtr field;
  unsigned dim = 0;
  std::optional<PointSet> file_set;
};

/// Field, effective dimension and (for file sources) the set itself.
inline Workspace prepare(const RunConfig& cfg, const SetSource* src, unsigned fallback_dim = 2) {
  Workspace w;
  w.field = parse_field(cfg.field.empty() ? "5" : cfg.field);
  if (src && src->kind == SetSource::Kind::File) {
    w.file_set = read_point_set(w.field, src->path);
    if (cfg.dim && cfg.dim != w.file_set->dim())
      throw InvalidParameter("--dim " + std::to_string(cfg.dim) + " disagrees with the set file dimension " +
                             std::to_string(w.file_set->dim()));
    w.dim = w.file_set->dim();
  } else {
    w.dim = cfg.dim ? cfg.dim : fallback_dim;
  }
  return w;
}

inline SharpnessSpec build_sharpness(const SetSource& src, const FieldPtr& field, unsigned dim, Element eps) {
  switch (src.sharpness) {
    case SharpnessKind::Even: return build_sharpness_even(field, dim, eps);
    case SharpnessKind::OddIII: return build_sharpness_odd_iii(field, dim, eps);
    case SharpnessKind::OddII: return build_sharpness_odd_ii(field, dim, src.delta, eps);
  }
  throw InternalError("unhandled sharpness kind");
}

inline unsigned sharpness_default_dim(const SetSource& src) { return src.sharpness == SharpnessKind::Even ? 2 : 3; }

/// Point set for trial `index`. Random sets draw their size and members from derive_seed(seed, index).
inline PointSet materialize(const SetSource& src, const Workspace& w, const FormInput& form, std::uint64_t seed,
                            std::uint64_t index) {
  switch (src.kind) {
    case SetSource::Kind::File: return *w.file_set;
    case SetSource::Kind::Random: {
      Rng rng(derive_seed(seed, index));
      const auto size = src.min_size + rng.below(src.max_size - src.min_size + 1);
      return random_subset(w.field, w.dim, size, rng);
    }
    case SetSource::Kind::Sharpness:
      return build_sharpness(src, w.field, w.dim, form.standard.epsilon()).set;
  }
  throw InternalError("unhandled set source");
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void check_format(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv") throw InvalidParameter("--format must be json or csv");
}

}  // namespace detail

inline RunResult run_count(const RunConfig& cfg) {
  detail::check_format(cfg);
  const auto src = parse_set_source(cfg.set);
  const auto w = detail::prepare(cfg, &src, src.kind == SetSource::Kind::Sharpness ? detail::sharpness_default_dim(src) : 2);
  const auto form = parse_form(w.field, cfg.form, w.dim);
  if (form.dim() != w.dim) throw InvalidParameter("form dimension does not match the set dimension");
  const auto ratios = parse_ratio_list(*w.field, cfg.r);
  const auto set = detail::materialize(src, w, form, cfg.seed, 0);

  const auto hist = form.general ? distance_histogram(set, *form.general, cfg.threads)
                                 : distance_histogram(set, form.standard, cfg.threads);
  RunResult res;
  std::vector<CountReport> reports;
  for (auto r : ratios) reports.push_back(W_from_histogram(*w.field, hist, r));

  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "r,W,M,w0\n";
    for (const auto& c : reports) out << c.r.index() << ',' << c.W << ',' << c.M << ',' << c.w0 << '\n';
    res.report = out.str();
  } else {
    auto j = report_header(cfg, w.field->spec());
    j["form"] = to_json(form);
    j["set"] = Json{{"source", cfg.set}, {"dim", set.dim()}, {"size", set.size()}};
    j["histogram"] = hist.counts;
    Json arr = Json::array();
    for (const auto& c : reports) arr.push_back(to_json(c));
    j["reports"] = arr;
    res.report = detail::dump(j);
  }
  res.summary = "count: |E| = " + std::to_string(set.size()) + ", " + std::to_string(reports.size()) + " ratios\n";
  return res;
}

namespace detail {

struct TrialOutcome {
  Json json;
  bool pass = false;
  std::vector<std::string> csv_rows;
};

inline TrialOutcome run_bounds_trial(const RunConfig& cfg, const SetSource& src, const Workspace& w,
                                     const FormInput& form, const std::vector<Element>& ratios, unsigned index) {
  const auto raw = materialize(src, w, form, cfg.seed, index);
  const auto set = to_standard_coordinates(raw, form);
  const BoundEvaluator ev(set, form.standard, FourierOptions{1, cfg.budget});

  TrialOutcome out;
  bool pass = true;
  const auto w0 = ev.w0_bound();
  pass = pass && w0.holds;

  bool fourier_consistent = true;
  if (form.standard.is_even()) fourier_consistent = ev.w0_fourier_even() == Rational(w0.w0);
  Json bounds = Json::array();
  for (auto r : ratios) {
    const auto b = ev.check(r);
    fourier_consistent = fourier_consistent && ev.M_fourier(r) == Rational(b.M);
    pass = pass && b.pass();
    bounds.push_back(to_json(b));
    std::ostringstream row;
    row << index << ',' << set.size() << ',' << r.index() << ',' << to_string(b.case_label) << ',' << b.W << ','
        << b.M << ',' << b.w0 << ',' << to_string(b.case_rhs) << ',' << (b.case_holds ? 1 : 0) << ','
        << (b.size_condition_met() ? 1 : 0) << ',' << (b.pass() ? 1 : 0);
    out.csv_rows.push_back(row.str());
  }
  pass = pass && fourier_consistent;

  Json j;
  j["index"] = index;
  if (src.kind == SetSource::Kind::Random) j["trial_seed"] = derive_seed(cfg.seed, index);
  j["size"] = set.size();
  j["w0_bound"] = to_json(w0);
  j["fourier_consistent"] = fourier_consistent;
  j["bounds"] = bounds;
  if (form.dim() >= 2) {
    const auto cor = quotient_corollary_check(set, form.standard);
    pass = pass && cor.pass();
    j["corollary"] = to_json(cor);
  }
  j["pass"] = pass;
  out.json = std::move(j);
  out.pass = pass;
  return out;
}

}  // namespace detail

/// Theorem sweep. Trials run in parallel; each owns the RNG stream derive_seed(seed, index)
/// and results are merged by index.
inline RunResult run_bounds(const RunConfig& cfg) {
  detail::check_format(cfg);
  const auto src = parse_set_source(cfg.set);
  const auto w = detail::prepare(cfg, &src, src.kind == SetSource::Kind::Sharpness ? detail::sharpness_default_dim(src) : 2);
  if (w.dim < 2) throw DomainError("theorem bounds need d >= 2");
  const auto form = parse_form(w.field, cfg.form, w.dim);
  if (form.dim() != w.dim) throw InvalidParameter("form dimension does not match the set dimension");
  const auto ratios = parse_ratio_list(*w.field, cfg.r);
  detail::check_budget(PointSet(w.field, w.dim).ambient_size(), cfg.budget, "bounds");
  const unsigned trials = src.kind == SetSource::Kind::Random ? std::max(1u, cfg.trials) : 1u;

  std::vector<detail::TrialOutcome> outcomes(trials);
  parallel_chunks(trials, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    for (auto i = begin; i < end; ++i)
      outcomes[i] = detail::run_bounds_trial(cfg, src, w, form, ratios, static_cast<unsigned>(i));
  });

  bool pass = true;
  std::uint64_t failed = 0;
  for (const auto& o : outcomes) {
    pass = pass && o.pass;
    failed += o.pass ? 0 : 1;
  }

  RunResult res;
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "trial,size,r,case,W,M,w0,case_rhs,case_holds,size_condition_met,pass\n";
    for (const auto& o : outcomes)
      for (const auto& row : o.csv_rows) out << row << '\n';
    res.report = out.str();
  } else {
    auto j = report_header(cfg, w.field->spec());
    j["form"] = to_json(form);
    j["set"] = cfg.set;
    j["trials"] = trials;
    Json arr = Json::array();
    for (auto& o : outcomes) arr.push_back(std::move(o.json));
    j["results"] = arr;
    j["failed_trials"] = failed;
    j["pass"] = pass;
    res.report = detail::dump(j);
  }
  res.exit_code = pass ? kExitPass : kExitFailure;
  res.summary = "bounds: " + std::to_string(trials) + " trials, " + std::to_string(failed) + " failed: " +
                (pass ? "PASS" : "FAIL") + "\n";
  return res;
}

inline RunResult run_sharpness(const RunConfig& cfg) {
  detail::check_format(cfg);
  const auto src = parse_set_source(cfg.set.empty() ? "sharpness:even" : cfg.set);
  if (src.kind != SetSource::Kind::Sharpness) throw InvalidParameter("sharpness needs --set sharpness:<kind>");
  const auto w = detail::prepare(cfg, &src, detail::sharpness_default_dim(src));
  const auto form = parse_form(w.field, cfg.form, w.dim);
  if (form.dim() != w.dim) throw InvalidParameter("form dimension does not match --dim");
  const auto spec = detail::build_sharpness(src, w.field, w.dim, form.standard.epsilon());
  const auto rep = evaluate_sharpness(spec, cfg.threads);
  const bool pass = rep.pass(spec.kind);

  RunResult res;
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "r,eta,W\n";
    const auto hist = distance_histogram(spec.set, spec.form, cfg.threads);
    for (std::uint32_t r = 1; r < w.field->q(); ++r)
      out << r << ',' << w.field->eta(Element{r}) << ',' << W_from_histogram(*w.field, hist, Element{r}).W << '\n';
    res.report = out.str();
  } else {
    auto j = report_header(cfg, w.field->spec());
    j["form"] = to_json(form);
    j["construction"] = to_json(spec, rep);
    j["pass"] = pass;
    res.report = detail::dump(j);
  }
  res.exit_code = pass ? kExitPass : kExitFailure;
  std::string nonsquares;
  for (auto r : rep.vanishing_ratios)
    if (w.field->eta(r) == -1) nonsquares += (nonsquares.empty() ? "" : ",") + std::to_string(r.index());
  res.summary = std::string("sharpness ") + to_string(spec.kind) + ": |E| = " + std::to_string(rep.size) +
                ", non-square r with W(r) = 0: {" + nonsquares + "}: " + (pass ? "PASS" : "FAIL") + "\n";
  return res;
}

/// Variety specs: "sphere:t", "H:a1,...,an", "VQr:r", "full".
inline PointSet build_variety(const FieldPtr& field, const FormInput& form, const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "sphere") return sphere(form.standard, arg.empty() ? field->zero() : detail::parse_element(*field, arg));
  if (kind == "full") return PointSet::full(field, form.dim());
  if (kind == "H") {
    std::vector<Element> a;
    for (const auto& item : detail::split(arg, ',')) a.push_back(detail::parse_element(*field, item));
    if (a.empty()) throw InvalidParameter("H needs coefficients, e.g. H:1,1");
    return diagonal_variety(field, a);
  }
  if (kind == "VQr") return product_variety(RatioSpec(detail::parse_element(*field, arg), form.standard));
  throw InvalidParameter("unknown variety '" + spec + "' (sphere:t | H:a1,..,an | VQr:r | full)");
}

/// Full table m -> q^n S^(m).
inline RunResult run_fourier(const RunConfig& cfg) {
  detail::check_format(cfg);
  if (cfg.set.empty() == cfg.variety.empty()) throw InvalidParameter("fourier needs exactly one of --set and --variety");
  std::optional<SetSource> src;
  if (!cfg.set.empty()) src = parse_set_source(cfg.set);
  const auto w = detail::prepare(cfg, src ? &*src : nullptr,
                                 src && src->kind == SetSource::Kind::Sharpness ? detail::sharpness_default_dim(*src) : 2);
  const auto form = parse_form(w.field, cfg.form, w.dim);
  const PointSet s = src ? detail::materialize(*src, w, form, cfg.seed, 0) : build_variety(w.field, form, cfg.variety);
  const auto table = fourier_set_table(s, FourierOptions{cfg.threads, cfg.budget});

  RunResult res;
  Point m(s.dim());
  auto coords = [&](std::uint64_t idx) {
    s.codec().decode(idx, m);
    std::string out;
    for (unsigned k = 0; k < s.dim(); ++k) out += (k ? " " : "") + std::to_string(m[k].index());
    return out;
  };
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "m_index,m,coeffs,re,im\n";
    for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
      const auto z = table[idx].to_complex();
      out << idx << ',' << coords(idx) << ',' << table[idx].to_string() << ',' << format_double(z.real()) << ','
          << format_double(z.imag()) << '\n';
    }
    res.report = out.str();
  } else {
    auto j = report_header(cfg, w.field->spec());
    j["form"] = to_json(form);
    j["set"] = Json{{"source", src ? cfg.set : cfg.variety}, {"dim", s.dim()}, {"size", s.size()}};
    j["scale"] = s.dim();
    Json arr = Json::array();
    for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
      const auto z = table[idx].to_complex();
      arr.push_back(Json{{"m_index", idx},
                         {"m", coords(idx)},
                         {"coeffs", std::vector<std::int64_t>(table[idx].coeffs().begin(), table[idx].coeffs().end())},
                         {"re", format_double(z.real())},
                         {"im", format_double(z.imag())}});
    }
    j["table"] = arr;
    res.report = detail::dump(j);
  }
  res.summary = "fourier: " + std::to_string(table.size()) + " frequencies, |S| = " + std::to_string(s.size()) + "\n";
  return res;
}

/// Identity suites. Without a field the grid is q in {3, 5, 7, 9}; a field restricts the grid
/// to it. --dim bounds n (default 4).
inline RunResult run_verify(const RunConfig& cfg) {
  VerifyGrid g = VerifyGrid::defaults();
  if (!cfg.field.empty()) g.fields = {parse_field(cfg.field)};
  g.max_n = cfg.dim ? cfg.dim : 4;
  g.samples = cfg.samples;
  g.gcl_sets = cfg.gcl_sets;
  g.seed = cfg.seed;
  g.fourier = FourierOptions{cfg.threads, cfg.budget};
  g.inject_sign_error = cfg.inject_sign_error;
  const auto suites = run_verification(g);

  bool pass = true;
  std::ostringstream summary;
  Json arr = Json::array();
  for (const auto& s : suites) {
    pass = pass && s.pass();
    summary << "suite " << s.name << ": checks=" << s.checks << " failures=" << s.failures << ' '
            << (s.pass() ? "PASS" : "FAIL") << '\n';
    for (const auto& wit : s.witnesses) summary << "  witness: " << wit << '\n';
    arr.push_back(to_json(s));
  }
  summary << "verify: " << (pass ? "PASS" : "FAIL") << '\n';

  Json j;
  j["version"] = kVersion;
  j["command"] = cfg.command;
  j["config"] = cfg.to_json(false);
  Json fields = Json::array();
  for (const auto& f : g.fields) fields.push_back(to_json(f->spec()));
  j["fields"] = fields;
  j["seed"] = cfg.seed;
  j["max_n"] = g.max_n;
  j["suites"] = arr;
  j["pass"] = pass;

  RunResult res;
  res.report = detail::dump(j);
  res.summary = summary.str();
  res.exit_code = pass ? kExitPass : kExitFailure;
  return res;
}

inline RunResult run_command(const RunConfig& cfg) {
  if (cfg.command == "verify") return run_verify(cfg);
  if (cfg.command == "count") return run_count(cfg);
  if (cfg.command == "bounds") return run_bounds(cfg);
  if (cfg.command == "sharpness") return run_sharpness(cfg);
  if (cfg.command == "fourier") return run_fourier(cfg);
  throw InvalidParameter("unknown command '" + cfg.command + "'");
}

}  // namespace qdist

#endif  // QDIST_RUNNER_HPP
