#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "lsp/diophantine.hpp"
#include "lsp/group_file.hpp"
#include "lsp/multipoly.hpp"
#include "lsp/probes.hpp"
#include "lsp/smallgap.hpp"
#include "lsp/spectrum.hpp"

using json = nlohmann::ordered_json;
using namespace lsp;

namespace {

enum Exit { kOk = 0, kOther = 1, kParse = 2, kPrecision = 3, kBudget = 4, kVerification = 5, kUsage = 64 };

struct RunConfig {
  std::string command;
  std::string group_file;
  std::string preset;
  std::string out;
  std::string format = "csv";
  int cutoff = 8;
  int precision = 512;
  std::uint64_t seed = 1;
  bool oriented = false;
  // smallgap
  int count = 3;
  int n0 = 8;
  std::string F = "exp";
  double delta = 3.0;
  // diophantine
  std::string check = "series";
  std::string series = "closing:2:1/10";
  std::string poly_file;
  std::string word;
  std::string eta = "1/10";
  int genus = 2;
  int m = 2;
  int tuples = 20;
  int degree = 3;
  double epsilon = 1e-3;
  bool eliminate = false;

  json to_json() const {
    json j;
    j["command"] = command;
    if (command != "diophantine" && command != "examples") {
      j["group"] = group_file.empty() ? json{{"preset", preset}} : json{{"file", group_file}};
      j["cutoff"] = cutoff;
      j["oriented"] = oriented;
    }
    j["precision"] = precision;
    j["seed"] = seed;
    j["format"] = format;
    j["out"] = out;
    if (command == "smallgap") {
      j["count"] = count;
      j["n0"] = n0;
      j["F"] = F;
      j["delta"] = delta;
    }
    if (command == "diophantine") {
      j["check"] = check;
      if (check == "series") j["series"] = series;
      if (check == "quadexp") j.update({{"genus", genus}, {"eta", eta}, {"cutoff", cutoff}, {"tuples", tuples}});
      if (check == "words") j.update({{"m", m}, {"eta", eta}, {"cutoff", cutoff}, {"tuples", tuples}});
      if (check == "chebyshev" || check == "remez") {
        if (poly_file.empty())
          j["degree"] = degree;
        else
          j["poly"] = poly_file;
      }
      if (check == "remez") j["epsilon"] = epsilon;
      if (check == "trace") j.update({{"word", word}, {"m", m}, {"eliminate", eliminate}});
    }
    return j;
  }
};

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + cfg.out + "'");
  f << text;
}

// JSON runs put everything in the main document; CSV runs print the
// summary on stderr.
void emit(const RunConfig& cfg, const std::string& csv, json summary, json data) {
  if (cfg.format == "json") {
    json doc;
    doc["config"] = cfg.to_json();
    doc["summary"] = std::move(summary);
    if (!data.is_null()) doc["data"] = std::move(data);
    write_output(cfg, doc.dump(2) + "\n");
  } else {
    write_output(cfg, csv);
    json doc;
    doc["config"] = cfg.to_json();
    doc["summary"] = std::move(summary);
    std::cerr << doc.dump(2) << "\n";
  }
}

json interval_json(const Interval& x) { return json::array({x.lower(), x.upper()}); }

Group load(const RunConfig& cfg) {
  if (!cfg.group_file.empty() && !cfg.preset.empty())
    throw Error(ErrorCode::InvalidArgument, "give either --group or --preset, not both");
  if (!cfg.group_file.empty()) return load_group(cfg.group_file);
  return preset(cfg.preset.empty() ? "sanov" : cfg.preset);
}

int start_precision(const RunConfig& cfg) { return std::min(64, cfg.precision); }

void check_precision(const RunConfig& cfg) {
  if (cfg.precision < 32) throw Error(ErrorCode::InvalidArgument, "--precision must be at least 32");
}

json records_json(const LengthSpectrum& s) {
  json arr = json::array();
  for (const auto& r : s.records)
    arr.push_back({{"class", word_to_string(r.word)},
                   {"word_length", r.word_length},
                   {"trace", exact_trace_string(r.trace)},
                   {"trace_enclosure", interval_json(r.trace_enclosure)},
                   {"length", interval_json(r.length)}});
  return arr;
}

json gap_summary(const GapReport& g) {
  json j;
  j["distinct"] = g.distinct;
  j["equal"] = g.equal;
  j["undecided"] = g.undecided;
  j["min_certified_gap"] = g.min_certified_gap ? interval_json(*g.min_certified_gap) : json(nullptr);
  return j;
}

int cmd_spectrum(const RunConfig& cfg) {
  check_precision(cfg);
  Group g = load(cfg);
  LengthSpectrum s = build_spectrum(g, cfg.cutoff, start_precision(cfg), cfg.oriented);
  GapReport gaps = gap_scan(s, cfg.precision);
  json summary;
  summary["group"] = g.name;
  summary["scalar"] = to_string(g.kind());
  summary["records"] = s.records.size();
  summary["excluded"] = s.excluded.size();
  summary["gaps"] = gap_summary(gaps);
  if (!s.records.empty()) {
    auto [lo, hi] = milnor_constants(s);
    summary["milnor"] = {{"max_word_per_length", lo}, {"max_length_per_word", hi}};
  }
  if (gaps.undecided) summary["warning"] = "undecided gaps at the precision ceiling";
  emit(cfg, spectrum_csv(s), summary, cfg.format == "json" ? records_json(s) : json());
  return kOk;
}

int cmd_gaps(const RunConfig& cfg) {
  check_precision(cfg);
  Group g = load(cfg);
  LengthSpectrum s = build_spectrum(g, cfg.cutoff, start_precision(cfg), cfg.oriented);
  GapReport gaps = gap_scan(s, cfg.precision);
  json summary = gap_summary(gaps);
  MultiplicityReport mult = multiplicity_report(s);
  summary["multiplicity_groups"] = mult.groups.size();
  if (!mult.notice.empty()) summary["notice"] = mult.notice;
  json data = json::array();
  if (cfg.format == "json")
    for (const auto& p : gaps.pairs)
      data.push_back({{"first", word_to_string(s.records[p.first].word)},
                      {"second", word_to_string(s.records[p.second].word)},
                      {"status", to_string(p.status)},
                      {"gap", interval_json(p.gap)},
                      {"precision", p.precision}});
  emit(cfg, gaps_csv(s, gaps), summary, cfg.format == "json" ? data : json());
  return gaps.undecided ? kPrecision : kOk;
}

int cmd_fit(const RunConfig& cfg) {
  check_precision(cfg);
  Group g = load(cfg);
  LengthSpectrum s = build_spectrum(g, cfg.cutoff, start_precision(cfg), cfg.oriented);
  GapReport gaps = gap_scan(s, cfg.precision);
  SeparationFit fit = fit_separation(s, gaps);
  json summary;
  summary["C"] = fit.C;
  summary["beta"] = fit.beta;
  summary["pairs_used"] = fit.pairs_used;
  summary["gaps"] = gap_summary(gaps);
  bool ok = true;
  if (g.kind() != ScalarKind::Real) {
    GapBoundReport b = certified_gap_bound(s, gaps);
    summary["certified_bound"] = {{"field_degree", b.field_degree},
                                  {"N", b.N.get_str()},
                                  {"max_word_length", b.max_word_length},
                                  {"log10_length_bound", b.log10_length_bound},
                                  {"pairs_checked", b.pairs_checked},
                                  {"respected", b.respected}};
    ok = b.respected;
  } else {
    summary["certified_bound"] = nullptr;
  }
  std::ostringstream csv;
  csv << "max_length,log_gap,residual\n";
  for (size_t i = 0; i < fit.envelope.size(); ++i)
    csv << shortest_decimal(fit.envelope[i].first) << ',' << shortest_decimal(fit.envelope[i].second) << ','
        << shortest_decimal(fit.residuals[i]) << '\n';
  json data = json::array();
  for (size_t i = 0; i < fit.envelope.size(); ++i)
    data.push_back({{"max_length", fit.envelope[i].first}, {"log_gap", fit.envelope[i].second}, {"residual", fit.residuals[i]}});
  emit(cfg, csv.str(), summary, cfg.format == "json" ? data : json());
  if (!ok) return kVerification;
  return gaps.undecided ? kPrecision : kOk;
}

json perturbation_json(const SchedulePair& p) {
  const PerturbationResult& r = p.result;
  return {{"n", r.n},
          {"k", r.k},
          {"m", r.m},
          {"target_word", word_to_string(r.target_word)},
          {"matched_word", word_to_string(r.matched_word)},
          {"eta", r.eta.get_str()},
          {"target_trace_before", r.target_trace_before.get_str()},
          {"target_trace", r.target_trace.get_str()},
          {"matched_trace", r.matched_trace.get_str()},
          {"target_length", interval_json(r.target_length)},
          {"matched_length", interval_json(r.matched_length)},
          {"gap", interval_json(r.achieved_gap)},
          {"threshold_lower", p.threshold.lower()},
          {"exact_equal", r.exact_equal},
          {"non_conjugate", r.non_conjugate},
          {"unperturbed_identical", r.unperturbed_identical},
          {"schottky_after", r.schottky_after},
          {"repaired", r.repaired},
          {"pass", p.pass}};
}

int cmd_smallgap(const RunConfig& cfg) {
  Group g = load(cfg);
  const auto* t = std::get_if<GeneratorTuple<Rational>>(&g.tuple);
  if (!t) throw Error(ErrorCode::Unsupported, "the small-gap construction needs rational generators");
  ScheduleOptions opts;
  opts.n0 = cfg.n0;
  opts.equalize.delta = cfg.delta;
  opts.equalize.seed = cfg.seed;
  GapSchedule sched = run_schedule(*t, parse_gap_function(cfg.F), cfg.count, opts);
  bool all = true;
  json pairs = json::array();
  for (const auto& p : sched.produced_pairs) {
    all = all && p.pass;
    pairs.push_back(perturbation_json(p));
  }
  json summary;
  summary["F"] = sched.F.tag();
  summary["pairs"] = sched.produced_pairs.size();
  summary["all_pass"] = all;
  summary["eta_abs_sum"] = sched.eta_abs_sum.get_str();
  summary["drift"] = sched.drift.get_str();
  summary["drift_bounded"] = sched.drift_bounded;
  emit(cfg, schedule_csv(sched), summary, cfg.format == "json" ? pairs : json());
  return all ? kOk : kVerification;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

MultiPoly poly_from(const RunConfig& cfg, bool chebyshev) {
  if (!cfg.poly_file.empty()) return MultiPoly::parse(read_file(cfg.poly_file));
  if (cfg.degree < 0) throw Error(ErrorCode::InvalidArgument, "--degree must be non-negative");
  if (chebyshev) return MultiPoly::from_qpoly(monic_chebyshev(cfg.degree));
  return MultiPoly::variable(1, 0).pow(cfg.degree);
}

json diophantine_report(const RunConfig& cfg, int& status) {
  json r;
  const std::string& c = cfg.check;
  if (c == "series") {
    SeriesSpec s = parse_series(cfg.series);
    SummabilityVerdict v = borel_cantelli_check(s);
    r = {{"series", s.describe()}, {"converges", v.converges}, {"rationale", v.tail_bound_rationale}, {"partial_sums", v.partial_sums}};
  } else if (c == "quadexp") {
    QuadExpReport q = quadexp_check(cfg.genus, parse_rational(cfg.eta), cfg.cutoff, cfg.tuples, cfg.seed);
    r = {{"genus", q.genus}, {"eta", q.eta.get_str()}, {"exponent_constant", q.exponent_constant}, {"base", q.base}};
    json tuples = json::array();
    for (const auto& t : q.tuples) {
      json levels = json::array(), viol = json::array();
      for (const auto& l : t.levels) levels.push_back({{"L", l.max_word_length}, {"log10_ratio", l.log10_ratio}, {"pair", {l.first, l.second}}});
      for (const auto& l : t.violation_candidates) viol.push_back({{"L", l.max_word_length}, {"pair", {l.first, l.second}}});
      tuples.push_back({{"seed", t.seed}, {"records", t.records}, {"pairs_checked", t.pairs_checked}, {"equal_pairs", t.equal_pairs},
                        {"log10_K", t.log10_K}, {"K_positive", t.K_positive}, {"gaps_match_scan", t.gaps_match_scan},
                        {"levels", levels}, {"violation_candidates", viol}});
      if (!t.K_positive || !t.gaps_match_scan) status = kVerification;
    }
    r["tuples"] = tuples;
    r["violations"] = q.violations;
    if (q.violations) status = kVerification;
  } else if (c == "words") {
    WordIdentityReport w = word_identity_bound_check(cfg.m, parse_rational(cfg.eta), cfg.cutoff, cfg.tuples, cfg.seed);
    json tuples = json::array();
    for (const auto& t : w.tuples)
      tuples.push_back({{"seed", t.seed}, {"words_checked", t.words_checked}, {"violations", t.violations},
                        {"min_log10_margin", t.min_log10_margin}, {"median_log10_margin", t.median_log10_margin},
                        {"max_log10_margin", t.max_log10_margin}});
    r = {{"m", w.m}, {"eta", w.eta.get_str()}, {"tuples", tuples}, {"violations", w.violations}};
    if (w.violations) status = kVerification;
  } else if (c == "chebyshev") {
    MultiPoly P = poly_from(cfg, true);
    SupReport s = chebyshev_sup_bound(P);
    json arg = json::array();
    for (const auto& x : s.argmax) arg.push_back(x.get_str());
    r = {{"polynomial", P.serialize()}, {"bound", s.bound.get_str()}, {"empirical_sup", s.empirical.get_str()},
         {"argmax", arg}, {"consistent", s.consistent}};
    if (!s.consistent) status = kVerification;
  } else if (c == "remez") {
    MultiPoly P = poly_from(cfg, false);
    RemezReport m = remez_measure_bound(P, cfg.epsilon, Box::cube(P.nvars()), 0, 200000, cfg.seed);
    r = {{"polynomial", P.serialize()}, {"C_B", m.C_B}, {"sup_estimate", m.sup_estimate}, {"bound", m.bound},
         {"measure", m.estimate.estimated_measure}, {"samples", m.estimate.samples},
         {"confidence_width", m.estimate.confidence_width}, {"saturated", m.saturated}, {"consistent", m.consistent}};
    if (!m.consistent) status = kVerification;
  } else if (c == "trace") {
    Word w = parse_word(cfg.word);
    MultiPoly p = trace_polynomial(w, cfg.m);
    r = {{"word", word_to_string(w)}, {"degree", p.degree()}, {"polynomial", p.to_string(entry_names(cfg.m))}};
    if (cfg.eliminate) {
      EliminatedTrace e = eliminate_d(p, cfg.m);
      r["eliminated"] = {{"numerator", e.numerator.to_string(entry_names(cfg.m))},
                         {"degree", e.numerator.degree()},
                         {"a_powers", e.a_powers}};
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown check '" + c + "'");
  }
  return r;
}

int cmd_diophantine(const RunConfig& cfg) {
  int status = kOk;
  json report = diophantine_report(cfg, status);
  json doc;
  doc["config"] = cfg.to_json();
  doc["report"] = report;
  write_output(cfg, doc.dump(2) + "\n");
  return status;
}

int cmd_examples(const RunConfig& cfg) {
  std::string text;
  if (!cfg.preset.empty()) {
    text = serialize_group(preset(cfg.preset));
  } else {
    for (const auto& n : preset_names()) text += n + "\n";
  }
  write_output(cfg, text);
  return kOk;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return kParse;
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::Undecided: return kPrecision;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::CapsExhausted: return kBudget;
    case ErrorCode::VerificationFailed: return kVerification;
    default: return kOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Length spectra, small gaps and Diophantine bounds for SL(2) generator tuples"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--precision", cfg.precision, "Precision ceiling in bits");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto group_opts = [&](CLI::App* sub) {
    auto* g = sub->add_option("--group", cfg.group_file, "Group definition file");
    auto* p = sub->add_option("--preset", cfg.preset, "Named preset group");
    g->excludes(p);
    sub->add_option("--cutoff", cfg.cutoff, "Maximum word length")->check(CLI::Range(0, 64));
    sub->add_flag("--oriented", cfg.oriented, "Do not identify a class with its inverse");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "Length spectrum as CSV");
  CLI::App* gaps = app.add_subcommand("gaps", "Consecutive length gaps");
  CLI::App* fit = app.add_subcommand("fit", "Separation fit and certified bound");
  CLI::App* smallgap = app.add_subcommand("smallgap", "Small-gap schedule by trace equalization");
  CLI::App* dioph = app.add_subcommand("diophantine", "Polynomial and summability checks");
  CLI::App* examples = app.add_subcommand("examples", "List presets or print one as a group file");
  for (CLI::App* sub : {spectrum, gaps, fit, smallgap}) {
    common(sub);
    group_opts(sub);
  }
  smallgap->add_option("--count", cfg.count, "Number of pairs")->check(CLI::Range(1, 100));
  smallgap->add_option("--n0", cfg.n0, "First power of A1")->check(CLI::Range(1, 1000));
  smallgap->add_option("--F", cfg.F, "Target function: exp, exp:ALPHA, gauss, table:t=v,...");
  smallgap->add_option("--delta", cfg.delta, "Search window for the matched length");

  common(dioph);
  dioph->add_option("--check", cfg.check, "series, quadexp, words, chebyshev, remez or trace")
      ->check(CLI::IsMember({"series", "quadexp", "words", "chebyshev", "remez", "trace"}));
  dioph->add_option("--series", cfg.series, "Series, e.g. closing:2:1/10 or exp:2:0,0,1:0,1");
  dioph->add_option("--poly", cfg.poly_file, "Sparse polynomial file");
  dioph->add_option("--degree", cfg.degree, "Degree of the built-in test polynomial");
  dioph->add_option("--epsilon", cfg.epsilon, "Sublevel threshold");
  dioph->add_option("--word", cfg.word, "Word such as 'a1 A2'");
  dioph->add_flag("--eliminate", cfg.eliminate, "Eliminate d_j from the trace polynomial");
  dioph->add_option("--eta", cfg.eta, "Exponent slack (rational)");
  dioph->add_option("--genus", cfg.genus, "Genus for quadexp")->check(CLI::Range(2, 8));
  dioph->add_option("--m", cfg.m, "Generator count")->check(CLI::Range(1, 8));
  dioph->add_option("--tuples", cfg.tuples, "Number of sampled tuples")->check(CLI::Range(1, 1000));
  dioph->add_option("--cutoff", cfg.cutoff, "Word length cutoff")->check(CLI::Range(1, 64));

  examples->add_option("--preset", cfg.preset, "Preset to print");
  examples->add_option("--out", cfg.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (spectrum->parsed()) cfg.command = "spectrum";
    if (gaps->parsed()) cfg.command = "gaps";
    if (fit->parsed()) cfg.command = "fit";
    if (smallgap->parsed()) cfg.command = "smallgap";
    if (dioph->parsed()) cfg.command = "diophantine";
    if (examples->parsed()) cfg.command = "examples";
    if (cfg.command == "smallgap" && cfg.group_file.empty() && cfg.preset.empty()) cfg.preset = "schottky3";
    if (cfg.command == "diophantine") cfg.format = "json";

    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "gaps") return cmd_gaps(cfg);
    if (cfg.command == "fit") return cmd_fit(cfg);
    if (cfg.command == "smallgap") return cmd_smallgap(cfg);
    if (cfg.command == "diophantine") return cmd_diophantine(cfg);
    return cmd_examples(cfg);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}
