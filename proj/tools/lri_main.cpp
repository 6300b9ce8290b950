#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "lri/error.hpp"
#include "lri/json_io.hpp"
#include "lri/selfcheck.hpp"

namespace {

using lri::io::json;

bool g_verbose = false;

void log_line(const std::string& s) {
  if (g_verbose) std::cerr << "[lri] " << s << "\n";
}

// Option values are file paths, or inline JSON when they start with '{'/'['.
json load_json(const std::string& spec) {
  std::string text;
  if (!spec.empty() && (spec[0] == '{' || spec[0] == '[')) {
    text = spec;
  } else {
    std::ifstream in(spec);
    if (!in) throw lri::ParseError("cannot open " + spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw lri::ParseError("malformed JSON in " + spec);
  return j;
}

void emit(const json& result, bool float_view) {
  if (float_view) {
    json wrapped{{"result", result},
                 {"float_view", lri::io::float_view(result)}};
    std::cout << wrapped.dump(2) << "\n";
  } else {
    std::cout << result.dump(2) << "\n";
  }
}

std::vector<lri::FormalSum> fsum_list(const json& j) {
  if (!j.is_array()) throw lri::ParseError("expected an array of formal sums");
  std::vector<lri::FormalSum> out;
  for (const json& e : j) out.push_back(lri::io::fsum_of(e));
  return out;
}

lri::RefinableFunction refinable_of(const json& j) {
  if (!j.is_object() || !j.contains("pieces"))
    throw lri::ParseError("refinable function needs a \"pieces\" array");
  std::vector<lri::RefinableFunction::Piece> pieces;
  for (const json& e : j["pieces"]) {
    if (!e.contains("poly") || !e.contains("domain"))
      throw lri::ParseError("refinable piece needs \"poly\" and \"domain\"");
    std::vector<lri::Rat> poly;
    for (const json& c : e["poly"]) poly.push_back(lri::io::rat_of(c));
    bool increasing = e.value("increasing", true);
    for (const auto& [key, _] : e.items())
      if (key != "poly" && key != "domain" && key != "increasing")
        throw lri::ParseError("unknown field \"" + key + "\" in refinable piece");
    pieces.push_back(
        {std::move(poly), lri::io::interval_of(e["domain"]), increasing});
  }
  return lri::RefinableFunction(std::move(pieces));
}

json witness_json(const lri::DecompositionWitness& w) {
  json out = json::array();
  for (std::size_t p : w.parent_of) out.push_back(p);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* lv = std::getenv("LRI_LOG"))
    g_verbose = std::string(lv) == "debug";

  CLI::App app{"Exact rational engine for interval measures, formal sums, "
               "gauge divisions and Daniell round-trips"};
  app.require_subcommand(1);
  bool float_view = false;
  app.add_flag("--float-view", float_view,
               "annotate output with decimal approximations");

  std::string measure_spec, fsum_spec, inputs_spec, c1_spec, c2_spec;
  std::string region_spec, f_spec, terms_spec, tail_spec, points_spec;
  std::string epsilon_spec, gauge_spec, domain_spec, division_spec;
  std::string interval_spec, point_spec, generators_spec;
  std::string listing = "diagonal", kind = "mcshane", suite = "all";
  std::size_t depth = 4, cases = 40;
  std::uint64_t seed = 20240901;

  auto* integrate = app.add_subcommand("integrate", "Lebesgue-Riesz integral");
  integrate->add_option("--measure", measure_spec)->required();
  integrate->add_option("--fsum", fsum_spec)->required();

  auto* variations_cmd = app.add_subcommand("variations", "variation report");
  variations_cmd->add_option("--measure", measure_spec)->required();
  variations_cmd->add_option("--fsum", fsum_spec)->required();

  auto* decompose = app.add_subcommand("decompose", "colored decomposition");
  decompose->add_option("--inputs", inputs_spec)->required();
  decompose->add_option("--listing", listing)
      ->check(CLI::IsMember({"diagonal", "rowmajor"}));

  auto* refine = app.add_subcommand("refine", "common refinement");
  refine->add_option("--c1", c1_spec)->required();
  refine->add_option("--c2", c2_spec)->required();

  auto* jordan_cmd = app.add_subcommand("jordan", "Jordan decomposition");
  jordan_cmd->add_option("--measure", measure_spec)->required();

  auto* svar = app.add_subcommand("svar", "semivariation interval");
  svar->add_option("--measure", measure_spec)->required();
  svar->add_option("--region", region_spec)->required();

  auto* darboux = app.add_subcommand("darboux", "Darboux bracket");
  darboux->add_option("--measure", measure_spec)->required();
  darboux->add_option("--f", f_spec)->required();
  darboux->add_option("--depth", depth);

  auto* series = app.add_subcommand("series", "term-by-term integration");
  series->add_option("--measure", measure_spec)->required();
  series->add_option("--terms", terms_spec)->required();
  series->add_option("--tail", tail_spec)->required();

  auto* negligible = app.add_subcommand("negligible", "negligibility certificate");
  negligible->add_option("--measure", measure_spec)->required();
  negligible->add_option("--points", points_spec)->required();
  negligible->add_option("--depth", depth);
  negligible->add_option("--epsilon", epsilon_spec)->required();

  auto* gdivide = app.add_subcommand("gauge-divide", "tagged division");
  gdivide->add_option("--kind", kind)->check(CLI::IsMember({"mcshane", "kh"}));
  gdivide->add_option("--gauge", gauge_spec)->required();
  gdivide->add_option("--domain", domain_spec)->required();

  auto* gsum = app.add_subcommand("gauge-sum", "Riemann sum over a division");
  gsum->add_option("--f", f_spec)->required();
  gsum->add_option("--measure", measure_spec)->required();
  gsum->add_option("--division", division_spec)->required();

  auto* stone = app.add_subcommand("stone", "Stone point membership");
  stone->add_option("--interval", interval_spec)->required();
  stone->add_option("--point", point_spec)->required();

  auto* roundtrip = app.add_subcommand("daniell-roundtrip",
                                       "representation table and diff");
  roundtrip->add_option("--measure", measure_spec)->required();
  roundtrip->add_option("--generators", generators_spec)->required();
  roundtrip->add_option("--depth", depth)->default_val(0);

  auto* selftest = app.add_subcommand("selftest", "lemma property suites");
  selftest->add_option("--suite", suite);
  selftest->add_option("--cases", cases);
  selftest->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*integrate || *variations_cmd) {
      lri::RealMeasure m = lri::io::measure_of(load_json(measure_spec));
      lri::FormalSum c = lri::io::fsum_of(load_json(fsum_spec));
      lri::VariationReport r = lri::variations(m, c);
      if (*integrate && r.overall.is_both_inf())
        throw lri::IndefiniteIntegral("overall sum is ~inf");
      emit(lri::io::variation_report_json(r), float_view);
    } else if (*decompose) {
      std::vector<lri::FormalSum> inputs = fsum_list(load_json(inputs_spec));
      lri::Listing l = listing == "rowmajor" ? lri::Listing::RowMajor
                                             : lri::Listing::Diagonal;
      emit(lri::io::colored_pieces_json(lri::procedure1(inputs, l)), float_view);
    } else if (*refine) {
      lri::CommonRefinement r = lri::common_refine(
          lri::io::fsum_of(load_json(c1_spec)),
          lri::io::fsum_of(load_json(c2_spec)));
      emit(json{{"refined", lri::io::fsum_json(r.refined)},
                {"witness_c1", witness_json(r.from_c1)},
                {"witness_c2", witness_json(r.from_c2)}},
           float_view);
    } else if (*jordan_cmd) {
      lri::JordanTriple t = lri::jordan(lri::io::measure_of(load_json(measure_spec)));
      emit(json{{"plus", lri::io::measure_json(t.plus)},
                {"minus", lri::io::measure_json(t.minus)},
                {"total", lri::io::measure_json(t.total)}},
           float_view);
    } else if (*svar) {
      auto [lo, hi] =
          lri::semivariation(lri::io::measure_of(load_json(measure_spec)),
                             lri::io::interval_list_of(load_json(region_spec)));
      emit(json{{"lo", lri::rat_to_string(lo)}, {"hi", lri::rat_to_string(hi)}},
           float_view);
    } else if (*darboux) {
      auto [lo, hi] =
          lri::darboux_bounds(lri::io::measure_of(load_json(measure_spec)),
                              refinable_of(load_json(f_spec)), depth);
      emit(json{{"lower", lri::rat_to_string(lo)},
                {"upper", lri::rat_to_string(hi)},
                {"depth", depth}},
           float_view);
    } else if (*series) {
      lri::SeriesResult r = lri::series_integrate(
          lri::io::measure_of(load_json(measure_spec)),
          fsum_list(load_json(terms_spec)),
          lri::XNonneg(lri::rat_from_string(tail_spec)));
      emit(json{{"value", lri::io::xreal_json(r.value)},
                {"certified_tail", lri::io::xnonneg_json(r.certified_tail)},
                {"truncation", r.truncation}},
           float_view);
    } else if (*negligible) {
      json pts = load_json(points_spec);
      if (!pts.is_array()) throw lri::ParseError("--points must be an array");
      std::vector<lri::Rat> points;
      for (const json& p : pts) points.push_back(lri::io::rat_of(p));
      lri::RealMeasure m = lri::io::measure_of(load_json(measure_spec));
      lri::NegligibilityCert cert = lri::negligible_certificate(
          points, depth, lri::rat_from_string(epsilon_spec), m);
      json out = lri::io::cert_json(cert);
      out["verified"] = lri::check_certificate(cert, points, m);
      emit(out, float_view);
    } else if (*gdivide) {
      lri::Interval domain = lri::io::interval_of(load_json(domain_spec));
      lri::Gauge g = lri::io::gauge_of(load_json(gauge_spec), domain);
      lri::TagSystem t = lri::gauge_to_tag_system(domain, g);
      lri::TaggedDivision d = kind == "kh" ? lri::kh_division(t)
                                           : lri::mcshane_division(t);
      std::string why;
      if (!lri::check_division(t, d, kind == "kh", &why))
        throw lri::DomainError("produced division failed validation: " + why);
      emit(lri::io::division_json(d), float_view);
    } else if (*gsum) {
      lri::Rat sum = lri::riemann_sum(
          lri::io::profile_of(load_json(f_spec)),
          lri::io::measure_of(load_json(measure_spec)),
          lri::io::division_of(load_json(division_spec)));
      emit(json{{"sum", lri::rat_to_string(sum)}}, float_view);
    } else if (*stone) {
      lri::Interval i = lri::io::interval_of(load_json(interval_spec));
      lri::StonePoint p = lri::io::stone_point_of(load_json(point_spec));
      emit(json{{"member", lri::stone_member(i, p)},
                {"lim", lri::rat_to_string(lri::stone_lim(p))}},
           float_view);
    } else if (*roundtrip) {
      lri::RealMeasure m = lri::io::measure_of(load_json(measure_spec));
      lri::DaniellFunctional F(m);
      json gens = load_json(generators_spec);
      if (!gens.is_array())
        throw lri::ParseError("--generators must be an array of profiles");
      std::vector<lri::StepLatticeElem> generators;
      for (const json& g : gens)
        generators.push_back(lri::StepLatticeElem(lri::io::profile_of(g)));
      lri::RepresentationTable table = lri::represent(F, generators, depth);
      json diffs = json::array();
      for (const auto& entry : table.entries) {
        lri::Rat direct(0);
        for (const lri::Interval& piece : entry.set) direct += m.eval(piece);
        if (direct != entry.value)
          diffs.push_back(json{{"set", lri::io::interval_list_json(entry.set)},
                               {"series", lri::rat_to_string(entry.value)},
                               {"direct", lri::rat_to_string(direct)}});
      }
      emit(json{{"table", lri::io::representation_json(table)},
                {"diff", diffs},
                {"consistent", diffs.empty()}},
           float_view);
    } else if (*selftest) {
      log_line("running suites with seed " + std::to_string(seed));
      bool all_pass = true;
      lri::selfcheck::Rng rng(seed);
      std::vector<lri::selfcheck::SuiteResult> results;
      if (suite == "all") {
        results = lri::selfcheck::run_all(seed, cases);
      } else {
        using Suite = lri::selfcheck::SuiteResult (*)(lri::selfcheck::Rng&,
                                                      std::size_t);
        const std::pair<const char*, Suite> table[] = {
            {"procedure1", &lri::selfcheck::suite_procedure1_colors},
            {"lifts", &lri::selfcheck::suite_procedure1_lifts},
            {"invariance", &lri::selfcheck::suite_decomposition_invariance},
            {"comparison", &lri::selfcheck::suite_comparison},
            {"jordan", &lri::selfcheck::suite_jordan},
            {"semivariation", &lri::selfcheck::suite_semivariation},
            {"gauge", &lri::selfcheck::suite_gauge_exactness},
            {"minmax", &lri::selfcheck::suite_minmax},
            {"procedure2", &lri::selfcheck::suite_procedure2},
        };
        bool found = false;
        for (const auto& [name, fn] : table)
          if (suite == name) {
            results.push_back(fn(rng, cases));
            found = true;
          }
        if (!found) throw lri::ParseError("unknown suite \"" + suite + "\"");
      }
      for (const auto& res : results) {
        all_pass = all_pass && res.pass;
        std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << res.name << " ("
                  << res.cases << " cases)"
                  << (res.detail.empty() ? "" : ": " + res.detail) << "\n";
      }
      return all_pass ? 0 : 1;
    }
  } catch (const lri::ParseError& e) {
    std::cout << json{{"error", {{"name", e.name()}, {"message", e.what()}}}}
                     .dump(2)
              << "\n";
    return 2;
  } catch (const lri::Error& e) {
    std::cout << json{{"error", {{"name", e.name()}, {"message", e.what()}}}}
                     .dump(2)
              << "\n";
    return 3;
  }
  return 0;
}
