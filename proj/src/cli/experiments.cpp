#include "vqa/cli/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "vqa/common/bits.hpp"
#include "vqa/common/parallel.hpp"
#include "vqa/common/rng.hpp"
#include "vqa/cryptocheck/efi.hpp"
#include "vqa/cryptocheck/haar.hpp"
#include "vqa/cryptocheck/identify.hpp"
#include "vqa/cryptocheck/records.hpp"
#include "vqa/dvqa/dvqa.hpp"
#include "vqa/families/families.hpp"
#include "vqa/harness/config.hpp"
#include "vqa/harness/game.hpp"
#include "vqa/mcsp/mcsp.hpp"
#include "vqa/qsim/circuit_io.hpp"
#include "vqa/qsim/density_matrix.hpp"
#include "vqa/qsim/sampling.hpp"
#include "vqa/qsim/simulator.hpp"
#include "vqa/strategies/distinguishers.hpp"
#include "vqa/strategies/spoofers.hpp"

namespace vqa::cli {

using nlohmann::json;
using harness::format_double;

namespace {

// Seed stream used for family construction, shared with game configs.
constexpr std::uint64_t kFamilyStream = 0xFA;

std::int64_t geti(const json& p, const char* k) { return p.at(k).get<std::int64_t>(); }
std::size_t getz(const json& p, const char* k) { return static_cast<std::size_t>(p.at(k).get<std::int64_t>()); }
double getd(const json& p, const char* k) { return p.at(k).get<double>(); }
std::string gets(const json& p, const char* k) { return p.at(k).get<std::string>(); }

ParamSpec int_param(std::string name, json def, double lo, double hi, std::string help = {}) {
  return {std::move(name), ParamType::kInt, std::move(def), {}, std::move(help), lo, hi};
}
ParamSpec num_param(std::string name, json def, double lo, double hi, std::string help = {}) {
  return {std::move(name), ParamType::kNumber, std::move(def), {}, std::move(help), lo, hi};
}
ParamSpec typed_param(std::string name, ParamType t, json def, std::string help = {}) {
  return {std::move(name), t, std::move(def), {}, std::move(help)};
}

/// Tidy "metric,value" summaries.
class MetricTable {
 public:
  void add(const std::string& name, double v) {
    rows_.push_back(name + "," + format_double(v));
    summary_[name] = v;
  }
  ExperimentResult finish(std::vector<json> records, const std::string& experiment) {
    ExperimentResult r;
    r.records = std::move(records);
    json s = {{"record", "summary"}, {"experiment", experiment}};
    s.update(summary_);
    r.records.push_back(s);
    r.summary = summary_;
    r.csv_header = "metric,value";
    r.csv_rows = std::move(rows_);
    return r;
  }

 private:
  std::vector<std::string> rows_;
  json summary_ = json::object();
};

families::CircuitFamily family_param(const json& j, std::uint64_t seed) {
  return harness::family_from_json(j, derive_seed(seed, kFamilyStream));
}

// ---- vqa-game / uvqa-game ------------------------------------------------------------

std::vector<ParamSpec> game_params() {
  return {
      typed_param("family", ParamType::kObject, json{{"name", "simon"}, {"n", 8}}, "circuit family"),
      typed_param("spoofer", ParamType::kString, "uniform", "uniform | distinct-uniform | omniscient"),
      typed_param("distinguisher", ParamType::kAny, "simon", "xeb | simon | battery, or {name, params}"),
      int_param("samples_per_side", 32, 1, 1e7, "t"),
      int_param("num_circuit_draws", 100, 1, 1e7, "trials"),
      int_param("repetitions", 20, 1, 1e6, "batches per side per draw"),
  };
}

PreparedRun prepare_game(const json& p, std::uint64_t seed, bool universal) {
  json g = p;
  g["seed"] = to_hex(seed);
  auto cfg = std::make_shared<harness::GameConfig>(harness::game_config_from_json(g));
  return [cfg, universal](unsigned workers) {
    harness::GameConfig c = *cfg;
    c.workers = workers;
    const harness::GameReport rep = universal ? harness::run_uvqa_game(c) : harness::run_vqa_game(c);
    ExperimentResult r;
    r.records = harness::report_records(c, rep);
    r.summary = r.records.back();
    r.csv_header = harness::kSummaryCsvHeader;
    r.csv_rows.push_back(harness::summary_csv_row(c, rep));
    return r;
  };
}

// ---- xeb ---------------------------------------------------------------------------------

PreparedRun prepare_xeb(const json& p, std::uint64_t seed) {
  const int n = static_cast<int>(geti(p, "n"));
  const int depth = static_cast<int>(geti(p, "depth"));
  const std::size_t circuits = getz(p, "circuits");
  const std::size_t m = getz(p, "m");
  const double threshold = p.at("threshold").is_null() ? strategies::default_xeb_threshold(n) : getd(p, "threshold");
  auto fam = std::make_shared<families::CircuitFamily>(families::random_circuit_family(n, depth, derive_seed(seed, kFamilyStream)));
  return [=](unsigned workers) {
    struct Row {
      double honest = 0, uniform = 0, collision = 0;
      bool dh = false, du = false;
    };
    std::vector<Row> rows(circuits);
    const double scale = std::ldexp(1.0, n);
    parallel_for(circuits, workers, [&](std::size_t c) {
      const auto draw = fam->draw_at(c, derive_seed(seed, 0));
      const qsim::Distribution d = qsim::output_distribution(draw.circuit);
      const auto zh = qsim::sample(d, m, derive_seed(seed, 1, c));
      const auto zu = strategies::uniform_spoofer(n, m, derive_seed(seed, 2, c)).second;
      const auto rh = strategies::xeb_distinguisher(d, zh, threshold);
      const auto ru = strategies::xeb_distinguisher(d, zu, threshold);
      rows[c] = {rh.score * scale, ru.score * scale, d.collision_probability() * scale, rh.decision, ru.decision};
    });
    std::vector<json> recs;
    double sh = 0, su = 0, sc = 0, ah = 0, au = 0;
    for (std::size_t c = 0; c < circuits; ++c) {
      const Row& r = rows[c];
      recs.push_back({{"record", "circuit"}, {"index", c}, {"honest_score_scaled", r.honest},
                      {"uniform_score_scaled", r.uniform}, {"collision_scaled", r.collision},
                      {"honest_decision", r.dh ? 1 : 0}, {"uniform_decision", r.du ? 1 : 0}});
      sh += r.honest;
      su += r.uniform;
      sc += r.collision;
      ah += r.dh;
      au += r.du;
    }
    const double k = static_cast<double>(circuits);
    MetricTable t;
    t.add("threshold_scaled", threshold * scale);
    t.add("mean_honest_score_scaled", sh / k);
    t.add("mean_uniform_score_scaled", su / k);
    t.add("mean_collision_scaled", sc / k);
    t.add("honest_accept_rate", ah / k);
    t.add("uniform_accept_rate", au / k);
    return t.finish(std::move(recs), "xeb");
  };
}

// ---- simon -------------------------------------------------------------------------------

PreparedRun prepare_simon(const json& p, std::uint64_t seed) {
  const int n = static_cast<int>(geti(p, "n"));
  const std::size_t t = p.at("t").is_null() ? static_cast<std::size_t>(4 * n) : getz(p, "t");
  const std::size_t trials = getz(p, "trials");
  auto fam = std::make_shared<families::CircuitFamily>(families::simon_family(n, derive_seed(seed, kFamilyStream)));
  return [=](unsigned workers) {
    std::vector<std::array<int, 3>> rows(trials);
    parallel_for(trials, workers, [&](std::size_t i) {
      const auto draw = fam->draw_at(i, derive_seed(seed, 0));
      const auto& inst = std::get<families::SimonInstance>(draw.metadata);
      const auto d = qsim::output_distribution(draw.circuit);
      const auto zh = qsim::sample(d, t, derive_seed(seed, 1, i));
      const auto zu = strategies::uniform_spoofer(n, t, derive_seed(seed, 2, i)).second;
      const auto rh = strategies::simon_distinguisher(inst, zh);
      rows[i] = {rh.decision ? 1 : 0, strategies::simon_distinguisher(inst, zu).decision ? 1 : 0,
                 static_cast<int>(rh.score)};
    });
    std::vector<json> recs;
    double ah = 0, au = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      recs.push_back({{"record", "trial"}, {"index", i}, {"honest_decision", rows[i][0]},
                      {"uniform_decision", rows[i][1]}, {"honest_rank", rows[i][2]}});
      ah += rows[i][0];
      au += rows[i][1];
    }
    const double k = static_cast<double>(trials);
    MetricTable tab;
    tab.add("honest_accept_rate", ah / k);
    tab.add("uniform_accept_rate", au / k);
    tab.add("advantage", std::abs(ah - au) / k);
    return tab.finish(std::move(recs), "simon");
  };
}

// ---- prs-shadow / unidentifiability ------------------------------------------------------

PreparedRun prepare_prs_shadow(const json& p, std::uint64_t seed) {
  auto fam = std::make_shared<families::CircuitFamily>(family_param(p.at("family"), seed));
  const std::size_t m = getz(p, "m");
  const std::size_t trials = getz(p, "trials");
  return [=](unsigned workers) {
    const auto r = cryptocheck::prs_shadow_test(*fam, m, trials, seed, workers);
    MetricTable t;
    t.add("advantage", r.advantage);
    t.add("sigma", r.sigma);
    return t.finish({}, "prs-shadow");
  };
}

PreparedRun prepare_unidentifiability(const json& p, std::uint64_t seed) {
  auto fam = std::make_shared<families::CircuitFamily>(family_param(p.at("family"), seed));
  const std::size_t m = getz(p, "m");
  const std::size_t trials = getz(p, "trials");
  const bool same = p.at("same_pair").get<bool>();
  return [=](unsigned workers) {
    const auto r = cryptocheck::unidentifiability_test(*fam, m, trials, seed, same, workers);
    MetricTable t;
    t.add("advantage", r.advantage);
    t.add("sigma", r.sigma);
    return t.finish({}, "unidentifiability");
  };
}

// ---- haar-collision / chi2-tail ----------------------------------------------------------

PreparedRun prepare_haar(const json& p, std::uint64_t seed) {
  const int n = static_cast<int>(geti(p, "n"));
  const std::size_t m = getz(p, "m");
  const std::size_t draws = getz(p, "draws");
  const std::size_t batches = getz(p, "batches_per_draw");
  return [=](unsigned workers) {
    const auto r = cryptocheck::collision_probability_check(n, m, draws, batches, seed, workers);
    std::vector<json> recs;
    for (std::size_t d = 0; d < draws; ++d) {
      recs.push_back({{"record", "draw"}, {"index", d}, {"estimate", r.estimates[d]}, {"birthday", r.birthday_values[d]}});
    }
    for (const auto& c : cryptocheck::to_records(r)) recs.push_back(c);
    MetricTable t;
    t.add("mean_estimate", r.mean_estimate);
    t.add("bound_statement", r.bound_statement);
    t.add("bound_markov", r.bound_markov);
    t.add("fraction_within_statement", r.fraction_within_statement);
    t.add("fraction_within_markov", r.fraction_within_markov);
    t.add("statement_vacuous", r.statement_vacuous ? 1 : 0);
    t.add("markov_vacuous", r.markov_vacuous ? 1 : 0);
    return t.finish(std::move(recs), "haar-collision");
  };
}

PreparedRun prepare_chi2(const json& p, std::uint64_t seed) {
  const std::size_t k = getz(p, "k");
  const double x = getd(p, "x");
  const std::size_t trials = getz(p, "trials");
  if (!(x > 0.0)) throw ConfigError("params.x: must be > 0");
  return [=](unsigned workers) {
    const auto r = cryptocheck::chi_squared_tail_check(k, x, trials, seed, workers);
    std::vector<json> recs;
    for (const auto& c : cryptocheck::to_records(r)) recs.push_back(c);
    MetricTable t;
    t.add("out_frequency", r.out_frequency);
    t.add("bound", r.bound);
    t.add("sigma", r.sigma);
    t.add("mean", r.mean);
    t.add("pass", r.pass ? 1 : 0);
    return t.finish(std::move(recs), "chi2-tail");
  };
}

// ---- Generators (efi-check, hybrid) --------------------------------------------------------

cryptocheck::StateGenerator generator_param(const json& j, std::uint64_t seed, const std::string& where) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError(where + ".kind: missing");
  const auto kind = j.at("kind").get<std::string>();
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "kind" && std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
        throw ConfigError(where + "." + it.key() + ": unknown field");
  };
  if (kind == "uniform") {
    allow({"n"});
    return {qsim::Distribution::uniform(j.at("n").get<int>())};
  }
  if (kind == "point-mass") {
    allow({"n", "x"});
    return {qsim::Distribution::point_mass(j.at("n").get<int>(), j.value("x", std::uint64_t{0}))};
  }
  if (kind == "distribution") {
    allow({"probs"});
    const auto probs = j.at("probs").get<std::vector<double>>();
    const int bits = std::countr_zero(probs.size());
    if (probs.empty() || (std::size_t{1} << bits) != probs.size()) throw ConfigError(where + ".probs: length must be a power of two");
    qsim::Distribution d(bits, probs);
    d.validate();
    return {d};
  }
  if (kind == "family-mixture") {
    allow({"family", "draws"});
    const auto fam = family_param(j.at("family"), seed);
    return {families::family_mixture_distribution(fam, j.value("draws", std::size_t{1}), derive_seed(seed, 0))};
  }
  if (kind == "circuit") {
    allow({"family", "index", "dephase"});
    const auto fam = family_param(j.at("family"), seed);
    cryptocheck::StateGenerator g{fam.draw_at(j.value("index", std::size_t{0}), derive_seed(seed, 0)).circuit};
    g.dephase = j.value("dephase", true);
    return g;
  }
  throw ConfigError(where + ".kind: unknown generator '" + kind + "'");
}

std::vector<double> random_simplex(int n, CounterRng& rng, bool sparse) {
  std::vector<double> w(std::size_t{1} << n);
  double s = 0.0;
  for (auto& v : w) {
    v = (sparse && rng.coin()) ? 0.0 : rng.gamma(1.0);
    s += v;
  }
  if (s == 0.0) {
    w[0] = 1.0;
    s = 1.0;
  }
  for (auto& v : w) v /= s;
  return w;
}

// Mean of per-draw exact distributions, computed from state vectors directly.
std::vector<double> elementwise_mean(const families::CircuitFamily& fam, std::size_t draws, std::uint64_t seed) {
  std::vector<double> acc;
  for (std::size_t k = 0; k < draws; ++k) {
    const auto c = fam.draw_at(k, seed).circuit;
    const auto psi = qsim::run_circuit(c);
    std::vector<int> measured = c.measured;
    if (measured.empty())
      for (int q = 0; q < c.num_qubits; ++q) measured.push_back(q);
    if (acc.empty()) acc.assign(std::size_t{1} << measured.size(), 0.0);
    const auto& a = psi.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::size_t x = 0;
      for (std::size_t j = 0; j < measured.size(); ++j) x |= ((i >> measured[j]) & 1U) << j;
      acc[x] += std::norm(a[i]);
    }
  }
  for (auto& v : acc) v /= static_cast<double>(draws);
  return acc;
}

families::CircuitFamily mixture_test_family(std::size_t i, int max_n, std::uint64_t seed) {
  CounterRng rng(derive_seed(seed, 7, i));
  const int span = std::max(1, max_n - 1);
  const int n = 2 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(span)));
  switch (i % 3) {
    case 0:
      return families::simon_family(std::min(n, max_n), rng());
    case 1:
      return families::random_circuit_family(std::min(n, max_n), 1 + static_cast<int>(rng.uniform_below(6)), rng());
    default:
      return families::phase_prs_family(std::min(n, max_n), rng(), 2 + static_cast<int>(rng.uniform_below(3)));
  }
}

PreparedRun prepare_efi(const json& p, std::uint64_t seed) {
  const auto mode = gets(p, "mode");
  if (mode == "candidate") {
    if (p.at("gen0").is_null() || p.at("gen1").is_null()) throw ConfigError("params.gen0/gen1: required in candidate mode");
    auto cand = std::make_shared<cryptocheck::EfiCandidate>(cryptocheck::EfiCandidate{
        generator_param(p.at("gen0"), derive_seed(seed, 10), "params.gen0"),
        generator_param(p.at("gen1"), derive_seed(seed, 11), "params.gen1"), static_cast<int>(geti(p, "lambda"))});
    const std::size_t m = getz(p, "m");
    const std::size_t trials = getz(p, "trials");
    std::optional<double> fth;
    if (!p.at("farness_threshold").is_null()) fth = getd(p, "farness_threshold");
    const double ath = getd(p, "advantage_threshold");
    return [=](unsigned workers) {
      const auto r = cryptocheck::efi_check(*cand, m, trials, seed, fth, ath, workers);
      MetricTable t;
      t.add("statistical_farness", r.statistical_farness);
      t.add("battery_advantage", r.battery_advantage);
      t.add("farness_threshold", r.farness_threshold);
      t.add("farness_pass", r.verdict.farness_pass ? 1 : 0);
      t.add("indistinguishability_not_refuted", r.verdict.indistinguishability_not_refuted ? 1 : 0);
      return t.finish({}, "efi-check");
    };
  }
  if (mode == "bridge") {
    const std::size_t pairs = getz(p, "pairs");
    const int max_n = static_cast<int>(geti(p, "max_n"));
    if (max_n > qsim::kMaxDensityQubits) throw ConfigError("params.max_n: exceeds the density-matrix cap");
    return [=](unsigned workers) {
      std::vector<std::array<double, 3>> rows(pairs);
      parallel_for(pairs, workers, [&](std::size_t i) {
        CounterRng rng(derive_seed(seed, i));
        const int n = 1 + static_cast<int>(i % static_cast<std::size_t>(max_n));
        const qsim::Distribution a(n, random_simplex(n, rng, i % 2 == 1));
        const qsim::Distribution b(n, random_simplex(n, rng, i % 4 == 3));
        const double td = qsim::trace_distance(qsim::diagonal_density(a), qsim::diagonal_density(b));
        const double tvd = qsim::total_variation_distance(a, b);
        rows[i] = {static_cast<double>(n), td, tvd};
      });
      std::vector<json> recs;
      double worst = 0.0;
      for (std::size_t i = 0; i < pairs; ++i) {
        recs.push_back({{"record", "pair"}, {"index", i}, {"n", rows[i][0]}, {"trace_distance", rows[i][1]}, {"tvd", rows[i][2]}});
        worst = std::max(worst, std::abs(rows[i][1] - rows[i][2]));
      }
      MetricTable t;
      t.add("pairs", static_cast<double>(pairs));
      t.add("max_abs_difference", worst);
      return t.finish(std::move(recs), "efi-check");
    };
  }
  if (mode == "mixture-identity") {
    const std::size_t count = getz(p, "families");
    const int max_n = static_cast<int>(geti(p, "max_n"));
    const std::size_t draws = getz(p, "draws");
    if (max_n < 2 || max_n > 6) throw ConfigError("params.max_n: mixture-identity needs 2 <= max_n <= 6");
    return [=](unsigned workers) {
      std::vector<double> diffs(count);
      parallel_for(count, workers, [&](std::size_t i) {
        const auto fam = mixture_test_family(i, max_n, seed);
        const auto mix = families::family_mixture_distribution(fam, draws, derive_seed(seed, 8, i));
        const auto ref = elementwise_mean(fam, draws, derive_seed(seed, 8, i));
        double d = 0.0;
        for (std::size_t x = 0; x < ref.size(); ++x) d = std::max(d, std::abs(mix.probs.at(x) - ref[x]));
        diffs[i] = d;
      });
      std::vector<json> recs;
      double worst = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        recs.push_back({{"record", "family"}, {"index", i}, {"max_abs_difference", diffs[i]}});
        worst = std::max(worst, diffs[i]);
      }
      MetricTable t;
      t.add("families", static_cast<double>(count));
      t.add("max_abs_difference", worst);
      return t.finish(std::move(recs), "efi-check");
    };
  }
  throw ConfigError("params.mode: expected candidate, bridge or mixture-identity");
}

// ---- hybrid ----------------------------------------------------------------------------

PreparedRun prepare_hybrid(const json& p, std::uint64_t seed) {
  const auto g0 = generator_param(p.at("gen0"), derive_seed(seed, 10), "params.gen0");
  const auto g1 = generator_param(p.at("gen1"), derive_seed(seed, 11), "params.gen1");
  if (g0.num_bits() != g1.num_bits()) throw ConfigError("params.gen1: width differs from gen0");
  if (gets(p, "decider") != "majority") throw ConfigError("params.decider: only 'majority' is available");
  const std::size_t t = getz(p, "t");
  const std::size_t challenges = getz(p, "challenges");
  const std::size_t runs = getz(p, "runs");
  const auto d0 = g0.measurement_distribution();
  const auto d1 = g1.measurement_distribution();
  return [=](unsigned) {
    const auto mode0 = static_cast<std::uint64_t>(std::max_element(d0.probs.begin(), d0.probs.end()) - d0.probs.begin());
    cryptocheck::MultiCopyDecider majority = [mode0](std::span<const std::uint64_t> z) {
      const auto hits = static_cast<std::size_t>(std::count(z.begin(), z.end(), mode0));
      return 2 * hits > z.size();
    };
    const auto s0 = cryptocheck::source_from(d0);
    const auto s1 = cryptocheck::source_from(d1);
    const auto multi = cryptocheck::measure_multi_copy_advantage(majority, s0, s1, t, runs, derive_seed(seed, 1));
    const auto single_decider = cryptocheck::hybrid_amplify(majority, s0, s1, t);
    const auto single = cryptocheck::measure_single_copy_advantage(single_decider, s0, s1, challenges, derive_seed(seed, 2));
    const double bound = multi.advantage / static_cast<double>(t);
    MetricTable tab;
    tab.add("multi_copy_advantage", multi.advantage);
    tab.add("multi_copy_sigma", multi.sigma);
    tab.add("single_copy_advantage", single.advantage);
    tab.add("single_copy_sigma", single.sigma);
    tab.add("bound", bound);
    tab.add("pass", single.advantage >= bound - 4.0 * single.sigma ? 1 : 0);
    return tab.finish({}, "hybrid");
  };
}

// ---- mcsp ---------------------------------------------------------------------------------

PreparedRun prepare_mcsp(const json& p, std::uint64_t seed) {
  const auto mode = gets(p, "mode");
  const double tol = getd(p, "tolerance");
  const std::size_t samples = getz(p, "samples");
  const int size_bound = static_cast<int>(geti(p, "size_bound"));
  if (mode == "planted-sweep") {
    const int max_n = static_cast<int>(geti(p, "max_n"));
    const int max_r = static_cast<int>(geti(p, "max_r"));
    for (int n = 1; n <= max_n; ++n)
      for (int r = 0; r <= max_r; ++r) mcsp::check_budget(n, r, size_bound);
    return [=](unsigned workers) {
      std::vector<json> recs;
      std::size_t planted = 0, yes = 0, oversize = 0;
      double worst = 0.0;
      for (int n = 1; n <= max_n; ++n) {
        for (int r = 0; r <= max_r; ++r) {
          const mcsp::SamplerCatalog catalog(n, r, size_bound, workers);
          std::vector<json> rows(catalog.size());
          std::vector<std::array<double, 3>> stats(catalog.size());
          parallel_for(catalog.size(), workers, [&](std::size_t i) {
            const auto& s = catalog.sampler(i);
            const auto batch = mcsp::run_sampler(s, samples, derive_seed(seed, static_cast<std::uint64_t>(n * 16 + r), i));
            const auto v = catalog.solve(batch, static_cast<int>(s.size()), tol);
            const double wsize = v.witness ? static_cast<double>(v.witness->size()) : -1.0;
            stats[i] = {v.yes ? 1.0 : 0.0, wsize, v.achieved_distance};
            rows[i] = {{"record", "planted"}, {"n", n}, {"r", r}, {"index", i}, {"planted_size", s.size()},
                       {"yes", v.yes ? 1 : 0}, {"witness_size", wsize}, {"distance", v.achieved_distance}};
          });
          for (std::size_t i = 0; i < catalog.size(); ++i) {
            ++planted;
            yes += stats[i][0] > 0 ? 1 : 0;
            if (stats[i][0] > 0 && stats[i][1] > static_cast<double>(catalog.sampler(i).size())) ++oversize;
            if (stats[i][0] > 0) worst = std::max(worst, stats[i][2]);
            recs.push_back(std::move(rows[i]));
          }
        }
      }
      MetricTable t;
      t.add("planted", static_cast<double>(planted));
      t.add("yes_rate", static_cast<double>(yes) / static_cast<double>(std::max<std::size_t>(planted, 1)));
      t.add("oversize_witnesses", static_cast<double>(oversize));
      t.add("max_witness_distance", worst);
      return t.finish(std::move(recs), "mcsp");
    };
  }
  if (mode == "verify") {
    const int r = static_cast<int>(geti(p, "max_r"));
    const int n = static_cast<int>(geti(p, "max_n"));
    const std::string source = gets(p, "source");
    std::optional<mcsp::MicroSampler> planted;
    if (source != "uniform") planted = mcsp::parse_netlist(source);
    mcsp::check_budget(planted ? planted->num_outputs() : n, r, size_bound);
    return [=](unsigned) {
      const qsim::SampleBatch batch = planted ? mcsp::run_sampler(*planted, samples, derive_seed(seed, 1))
                                              : strategies::uniform_spoofer(n, samples, derive_seed(seed, 1)).second;
      const auto v = mcsp::samp_mcsp_bruteforce(batch, size_bound, tol, r, mcsp::McspVariant::kObliviousSamp);
      std::vector<json> recs;
      recs.push_back({{"record", "verdict"}, {"variant", mcsp::variant_name(v.variant)}, {"yes", v.yes ? 1 : 0},
                      {"witness", v.witness ? mcsp::to_netlist(*v.witness) : ""}, {"distance", v.achieved_distance}});
      MetricTable t;
      t.add("verifier_output", v.yes ? 0 : 1);
      t.add("distance", v.achieved_distance);
      t.add("witness_size", v.witness ? static_cast<double>(v.witness->size()) : -1.0);
      return t.finish(std::move(recs), "mcsp");
    };
  }
  throw ConfigError("params.mode: expected planted-sweep or verify");
}

// ---- dvqa -----------------------------------------------------------------------------------

PreparedRun prepare_dvqa(const json& p, std::uint64_t seed) {
  const int bits = static_cast<int>(geti(p, "modulus_bits"));
  const std::size_t k = getz(p, "rounds");
  const std::size_t q = getz(p, "transcripts");
  const std::size_t draws = getz(p, "key_draws");
  const auto strategy = dvqa::parse_strategy(gets(p, "strategy"));
  if (bits > 48) throw ConfigError("params.modulus_bits: the claw search budget covers at most 48-bit moduli");
  return [=](unsigned workers) {
    const auto e = dvqa::run_dvqa_experiment(bits, k, draws, q, strategy, seed, workers);
    std::vector<json> recs;
    double hr = 0.0, sr = 0.0;
    for (std::size_t j = 0; j < e.per_key.size(); ++j) {
      const auto& r = e.per_key[j];
      recs.push_back({{"record", "keys"}, {"index", j}, {"honest_rate", r.honest_rate}, {"sim_rate", r.sim_rate},
                      {"advantage", r.advantage}, {"std_error", r.std_error}});
      hr += r.honest_rate;
      sr += r.sim_rate;
    }
    const double kd = static_cast<double>(e.per_key.size());
    MetricTable t;
    t.add("honest_accept_rate", hr / kd);
    t.add("sim_accept_rate", sr / kd);
    t.add("advantage", e.advantage);
    t.add("std_error", e.std_error);
    return t.finish(std::move(recs), "dvqa");
  };
}

json phase_prs_default(int n) { return {{"name", "phase-prs"}, {"n", n}}; }

std::vector<ExperimentKind> build_kinds() {
  std::vector<ExperimentKind> k;
  k.push_back({"vqa-game", "verification game; the distinguisher sees the spoofer's description", game_params(),
               [](const json& p, std::uint64_t s) { return prepare_game(p, s, false); }});
  k.push_back({"uvqa-game", "verification game without the spoofer's description", game_params(),
               [](const json& p, std::uint64_t s) { return prepare_game(p, s, true); }});
  {
    ParamSpec threshold{"threshold", ParamType::kNumber, nullptr, "1.5/2^n", "acceptance threshold on F_XEB", 0.0, 1.0};
    k.push_back({"xeb", "F_XEB of honest and uniform batches on brickwork random circuits",
                 {int_param("n", 10, 2, 14), int_param("depth", 20, 1, 1000), int_param("circuits", 100, 1, 1e6),
                  int_param("m", 10000, 1, 1e8), threshold},
                 prepare_xeb});
  }
  {
    ParamSpec t{"t", ParamType::kInt, nullptr, "4n", "samples per batch", 1, 1e7};
    k.push_back({"simon", "Gaussian-elimination verifier on honest and uniform Simon batches",
                 {int_param("n", 8, 2, 12), t, int_param("trials", 100, 1, 1e7)}, prepare_simon});
  }
  k.push_back({"prs-shadow", "battery advantage: family samples vs Haar outcome samples",
               {typed_param("family", ParamType::kObject, phase_prs_default(12)), int_param("m", 1000, 0, 1e7),
                int_param("trials", 50, 1, 1e6)},
               prepare_prs_shadow});
  k.push_back({"unidentifiability", "battery advantage: samples of C_i vs samples of C_j given C_i",
               {typed_param("family", ParamType::kObject, phase_prs_default(12)), int_param("m", 10000, 0, 1e7),
                int_param("trials", 50, 1, 1e6), typed_param("same_pair", ParamType::kBool, false, "control: C_j = C_i")},
               prepare_unidentifiability});
  k.push_back({"haar-collision", "collision probability of m samples from Haar outcome distributions",
               {int_param("n", 20, 1, 26), int_param("m", 100, 0, 1e7), int_param("draws", 100, 1, 1e6),
                int_param("batches_per_draw", 10000, 1, 1e8)},
               prepare_haar});
  k.push_back({"chi2-tail", "out-of-interval frequency of chi-squared variates",
               {int_param("k", 1024, 1, 1e9), num_param("x", 5.0, 1e-12, 1e6), int_param("trials", 100000, 1, 1e9)},
               prepare_chi2});
  k.push_back({"efi-check", "EFI farness and battery indistinguishability; bridge and mixture identities",
               {typed_param("mode", ParamType::kString, "candidate", "candidate | bridge | mixture-identity"),
                {"gen0", ParamType::kObject, nullptr, "none", "generator (candidate mode)"},
                {"gen1", ParamType::kObject, nullptr, "none", "generator (candidate mode)"},
                int_param("lambda", 2, 1, 1e9), int_param("m", 10000, 1, 1e8), int_param("trials", 200, 1, 1e7),
                {"farness_threshold", ParamType::kNumber, nullptr, "1/lambda", "", 0.0, 1.0},
                num_param("advantage_threshold", 0.06, 0.0, 1.0), int_param("pairs", 100, 1, 1e6),
                int_param("max_n", 8, 1, 12), int_param("families", 50, 1, 1e5), int_param("draws", 16, 1, 1e6)},
               prepare_efi});
  k.push_back({"hybrid", "single-copy decider built from a multi-copy decider by the hybrid argument",
               {typed_param("gen0", ParamType::kObject, json{{"kind", "point-mass"}, {"n", 1}, {"x", 0}}),
                typed_param("gen1", ParamType::kObject, json{{"kind", "point-mass"}, {"n", 1}, {"x", 1}}),
                typed_param("decider", ParamType::kString, "majority"), int_param("t", 5, 1, 1e4),
                int_param("challenges", 10000, 1, 1e8), int_param("runs", 10000, 1, 1e8)},
               prepare_hybrid});
  k.push_back({"mcsp", "brute-force SampMCSP: planted-sampler sweep or a single verification",
               {typed_param("mode", ParamType::kString, "planted-sweep", "planted-sweep | verify"),
                int_param("max_n", 2, 1, 4, "outputs (sweep: 1..max_n)"), int_param("max_r", 4, 0, 6, "random bits"),
                int_param("size_bound", 3, 0, 5), num_param("tolerance", 0.02, 0.0, 1.0),
                int_param("samples", 100000, 0, 1e8),
                typed_param("source", ParamType::kString, "uniform", "verify mode: uniform or a netlist")},
               prepare_mcsp});
  k.push_back({"dvqa", "designated-verifier protocol: honest prover vs a classical simulator",
               {int_param("modulus_bits", 32, 16, 64), int_param("rounds", 20, 1, 10000),
                int_param("transcripts", 200, 1, 1e7), int_param("key_draws", 1, 1, 1e5),
                typed_param("strategy", ParamType::kString, "one-root-guess",
                            "one-root-guess | replay | random-response | honest")},
               prepare_dvqa});
  return k;
}

}  // namespace

const std::vector<ExperimentKind>& experiment_kinds() {
  static const std::vector<ExperimentKind> kinds = build_kinds();
  return kinds;
}

}  // namespace vqa::cli
