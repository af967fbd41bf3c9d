#include "zerodist/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace zerodist {
namespace {

using json = nlohmann::json;

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& out) : out_(out), last_(std::chrono::steady_clock::now()) {}

  void mark(std::string stage) {
    const auto now = std::chrono::steady_clock::now();
    out_.push_back({std::move(stage), std::chrono::duration<double, std::milli>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>& out_;
  std::chrono::steady_clock::time_point last_;
};

void require_finite(const json& j, const std::string& path) {
  if (j.is_number_float()) {
    if (!std::isfinite(j.get<double>())) throw std::domain_error("non-finite value at " + path);
  } else if (j.is_object()) {
    for (const auto& [key, value] : j.items()) require_finite(value, path + "/" + key);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) require_finite(j[i], path + "/" + std::to_string(i));
  }
}

json item_to_json(const CertificateItem& item) {
  json j{{"name", item.name},         {"measured", item.measured}, {"bound", item.bound},
         {"slack", item.slack},       {"tolerance", item.tolerance}, {"pass", item.pass},
         {"gating", item.gating}};
  if (item.witness) j["witness"] = *item.witness;
  return j;
}

Complex complex_from_json(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw std::invalid_argument("coefficient must be a number or a [re, im] pair");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

AnalysisReport analyze(const Polynomial& p, std::string input, int prior_deflation, const AnalysisOptions& options) {
  AnalysisReport r;
  r.input = std::move(input);
  StageClock clock(r.timings);

  const MonicForm normalized = normalize_monic(p);
  clock.mark("normalize");
  const ZeroDeflation deflated = deflate_zero_roots(normalized.monic);
  r.deflation_order = prior_deflation + deflated.order;
  r.degree = deflated.cofactor.degree();
  clock.mark("deflate");

  RootFindOptions root_options;
  root_options.tol = options.root_tol;
  r.roots = find_roots(deflated.cofactor, root_options);
  clock.mark("find_roots");

  r.measures = measure_all(deflated.cofactor, r.roots, options.certify.quad);
  r.measures.log_mahler = log_mahler(r.roots, std::abs(normalized.lead));
  r.mahler = std::exp(r.measures.log_mahler);
  clock.mark("measures");

  const UnitAngleSet angles = schur_reduce(r.roots);
  clock.mark("schur_reduce");
  r.discrepancy = discrepancy(angles);
  clock.mark("discrepancy");

  r.certificates = certify_all(deflated.cofactor, r.roots, options.certify);
  clock.mark("certificates");
  return r;
}

AnalysisReport analyze(const FamilySpec& spec, const AnalysisOptions& options) {
  const FamilyMember member = generate(spec);
  return analyze(member.poly, spec.describe(), member.deflation_order, options);
}

json to_json(const AnalysisReport& r) {
  json roots = json::array();
  for (const Root& e : r.roots.entries)
    roots.push_back({{"modulus", e.modulus}, {"angle", e.angle}, {"multiplicity", e.multiplicity}});

  const Discrepancy& d = r.discrepancy;
  json items = json::array();
  for (const CertificateItem& item : r.certificates.items) items.push_back(item_to_json(item));
  const ReferenceConstants& c = r.certificates.constants;

  json timings = json::array();
  for (const StageTiming& t : r.timings) timings.push_back({{"stage", t.stage}, {"ms", t.milliseconds}});

  json j{
      {"schema_version", kReportSchemaVersion},
      {"input", r.input},
      {"degree", r.degree},
      {"deflation_order", r.deflation_order},
      {"roots", {{"residual_bound", r.roots.residual_bound}, {"entries", std::move(roots)}}},
      {"measures",
       {{"h", r.measures.h},
        {"h_error", r.measures.quadrature_error},
        {"H", r.measures.H},
        {"H_upper", r.measures.H_upper},
        {"log_script_M", r.measures.log_script_M},
        {"log_mahler", r.measures.log_mahler},
        {"mahler", r.mahler},
        {"converged", r.measures.converged}}},
      {"discrepancy",
       {{"D", d.value},
        {"excess", d.excess},
        {"deficit", d.deficit},
        {"witness", {{"start", d.witness.start}, {"length", d.witness.length}}},
        {"side", d.side == DiscrepancySide::excess ? "excess" : "deficit"},
        {"limit", d.limit},
        {"boundary_uncertainty", d.boundary_uncertainty}}},
      {"certificates",
       {{"all_pass", r.certificates.all_pass()},
        {"constants",
         {{"eight_over_pi", c.eight_over_pi}, {"catalan", c.catalan}, {"ganelius", c.ganelius}, {"sqrt2", c.sqrt2}}},
        {"items", std::move(items)}}},
      {"timings", std::move(timings)},
  };
  require_finite(j, "");
  return j;
}

std::string dump_report(const json& j) {
  require_finite(j, "");
  return j.dump(2) + "\n";
}

std::vector<Root> roots_from_report(const json& report) {
  std::vector<Root> out;
  for (const json& e : report.at("roots").at("entries"))
    out.push_back({e.at("modulus").get<double>(), e.at("angle").get<double>(), e.at("multiplicity").get<int>()});
  return out;
}

Polynomial polynomial_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::invalid_argument("expected an object with a \"coeffs\" array");
  std::vector<Complex> c;
  for (const json& v : j["coeffs"]) c.push_back(complex_from_json(v));
  return Polynomial(std::move(c));
}

json polynomial_to_json(const Polynomial& p) {
  json coeffs = json::array();
  for (const Complex& c : p.coeffs()) coeffs.push_back({c.real(), c.imag()});
  return {{"coeffs", std::move(coeffs)}};
}

FamilySpec family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("family spec needs a \"kind\"");
  FamilySpec spec;
  spec.kind = parse_family_kind(j.at("kind").get<std::string>());
  if (j.contains("N")) spec.N = j["N"].get<int>();
  if (j.contains("p")) spec.p = j["p"].get<long long>();
  if (j.contains("c")) spec.c = j["c"].get<double>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("coeffs"))
    for (const json& v : j["coeffs"]) spec.coeffs.push_back(complex_from_json(v));
  spec.validate();
  return spec;
}

json family_to_json(const FamilySpec& spec) {
  json j{{"kind", std::string(to_string(spec.kind))}};
  if (spec.N) j["N"] = *spec.N;
  if (spec.p) j["p"] = *spec.p;
  if (spec.c) j["c"] = *spec.c;
  if (spec.seed) j["seed"] = *spec.seed;
  if (!spec.coeffs.empty()) {
    json coeffs = json::array();
    for (const Complex& c : spec.coeffs) coeffs.push_back({c.real(), c.imag()});
    j["coeffs"] = std::move(coeffs);
  }
  return j;
}

std::string render_svg(const std::vector<Root>& roots, const std::string& title) {
  if (roots.empty()) throw std::invalid_argument("no roots to plot");
  constexpr double size = 640.0;
  constexpr double margin = 40.0;
  double extent = 1.25;
  for (const Root& r : roots) extent = std::max(extent, 1.05 * r.modulus);
  const double scale = (size / 2.0 - margin) / extent;
  const double mid = size / 2.0;
  auto px = [&](double x) { return mid + scale * x; };
  auto py = [&](double y) { return mid - scale * y; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0:.0f}\" height=\"{0:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {0:.0f}\">\n",
      size);
  out += fmt::format("<title>{}</title>\n", xml_escape(title));
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{0:.0f}\" height=\"{0:.0f}\" fill=\"white\"/>\n", size);
  out += fmt::format(
      "<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" stroke=\"#888\" stroke-width=\"1\"/>\n", margin,
      mid, size - margin, mid);
  out += fmt::format(
      "<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" stroke=\"#888\" stroke-width=\"1\"/>\n", mid,
      margin, mid, size - margin);
  out += fmt::format(
      "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\" fill=\"none\" stroke=\"#3060c0\" stroke-width=\"1\"/>\n", mid,
      mid, scale);
  out += "<g fill=\"#c03030\">\n";
  for (const Root& r : roots) {
    const Complex z = r.value();
    const double radius = 2.5 * std::sqrt(static_cast<double>(r.multiplicity));
    out += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\"/>\n", px(z.real()), py(z.imag()), radius);
  }
  out += "</g>\n";
  out += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n",
                     margin, margin / 2.0 + 5.0, xml_escape(title));
  out += "</svg>\n";
  return out;
}

std::string zeros_csv(const RootSet& roots) {
  std::string out = "modulus,angle,multiplicity,re,im\n";
  for (const Root& r : roots.entries) {
    const Complex z = r.value();
    out += fmt::format("{},{},{},{},{}\n", r.modulus, r.angle, r.multiplicity, z.real(), z.imag());
  }
  return out;
}

std::vector<EnsembleRow> run_ensemble(const FamilySpec& templ, int count, std::uint64_t seed_base,
                                      const EnsembleOptions& options) {
  if (count < 1) throw std::invalid_argument("ensemble count must be at least 1");
  std::vector<EnsembleRow> rows(static_cast<std::size_t>(count));
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      EnsembleRow& row = rows[static_cast<std::size_t>(i)];
      row.seed = seed_base + static_cast<std::uint64_t>(i);
      try {
        FamilySpec spec = templ;
        spec.seed = row.seed;
        const AnalysisReport r = analyze(spec, options.analysis);
        row.degree = r.degree;
        row.h = r.measures.h;
        row.H = r.measures.H;
        row.log_script_M = r.measures.log_script_M;
        row.D = r.discrepancy.value;
        row.bound = 8.0 / kPi * std::sqrt(r.degree * r.measures.h);
        row.ratio = row.bound > 0.0 ? row.D / row.bound : 0.0;
        row.certified = r.certificates.all_pass();
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
      }
    }
  };

  const int jobs = std::clamp(options.jobs, 1, count);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string ensemble_csv(const std::vector<EnsembleRow>& rows) {
  std::string out = "seed,N,h,H,log_script_M,D,bound,ratio,status\n";
  double max_ratio = 0.0;
  for (const EnsembleRow& r : rows) {
    std::string status = r.ok ? (r.certified ? "ok" : "certificate_failure") : "error: " + r.error;
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.seed, r.degree, r.h, r.H, r.log_script_M, r.D, r.bound,
                       r.ratio, csv_field(status));
    if (r.ok) max_ratio = std::max(max_ratio, r.ratio);
  }
  out += fmt::format("max_ratio,,,,,,,{},\n", max_ratio);
  return out;
}

}  // namespace zerodist
