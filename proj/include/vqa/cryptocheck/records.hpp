#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "vqa/cryptocheck/haar.hpp"

namespace vqa::cryptocheck {

enum class CheckStatus { kPass, kFail, kVacuous };
const char* check_status_name(CheckStatus s) noexcept;

/// (check, parameters, estimate, bound, status) line record.
nlohmann::json check_record(const std::string& check, nlohmann::json params, double estimate, double bound,
                            CheckStatus status);

nlohmann::json to_records(const ChiSquaredReport& r);
/// Two records: one per bound.
nlohmann::json to_records(const CollisionReport& r);

}  // namespace vqa::cryptocheck
