#include "vqa/cryptocheck/records.hpp"

namespace vqa::cryptocheck {

using nlohmann::json;

const char* check_status_name(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kVacuous:
      return "vacuous";
  }
  return "unknown";
}

json check_record(const std::string& check, json params, double estimate, double bound, CheckStatus status) {
  return {{"check", check},
          {"params", std::move(params)},
          {"estimate", estimate},
          {"bound", bound},
          {"status", check_status_name(status)}};
}

json to_records(const ChiSquaredReport& r) {
  return json::array({check_record("chi2-tail",
                                   {{"k", r.k}, {"x", r.x}, {"trials", r.trials}, {"lower", r.lower},
                                    {"upper", r.upper}, {"sigma", r.sigma}, {"mean", r.mean}},
                                   r.out_frequency, r.bound, r.pass ? CheckStatus::kPass : CheckStatus::kFail)});
}

json to_records(const CollisionReport& r) {
  const json params = {{"n", r.n},
                       {"m", r.m},
                       {"draws", r.estimates.size()},
                       {"batches_per_draw", r.batches_per_draw},
                       {"mean_estimate", r.mean_estimate}};
  auto status = [](bool vacuous, double fraction) {
    if (vacuous) return CheckStatus::kVacuous;
    return fraction >= 0.99 ? CheckStatus::kPass : CheckStatus::kFail;
  };
  return json::array(
      {check_record("haar-collision/statement", params, r.fraction_within_statement, r.bound_statement,
                    status(r.statement_vacuous, r.fraction_within_statement)),
       check_record("haar-collision/markov", params, r.fraction_within_markov, r.bound_markov,
                    status(r.markov_vacuous, r.fraction_within_markov))});
}

}  // namespace vqa::cryptocheck
