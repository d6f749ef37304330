#pragma once

#include <xaikg/value.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace xaikg {

/// Shape of a deterministic demand-forecasting dataset: daily shipments for every
/// (material, client) pair, one forecast per pair for the day after the shipment history, and
/// one relevance score per (forecast, feature).
struct SyntheticSpec {
    Date start = Date::from_ymd(2020, 1, 1);
    std::int64_t days = 30;
    std::int64_t materials = 3;
    std::int64_t clients = 2;
    std::vector<std::string> features{"price", "promo", "day_of_week", "holiday", "lag_7"};
    std::string model = "demand-model-v1";
    std::string use_case = "demand forecasting";
    std::uint64_t seed = 42;
};

/// Input files in the formats the ingesters read.
struct SyntheticDataset {
    std::string shipments_csv;
    std::string forecasts_json;
    std::string relevance_jsonl;
};

SyntheticDataset make_synthetic_dataset(const SyntheticSpec& spec = {});

}  // namespace xaikg
