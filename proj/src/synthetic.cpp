#include <xaikg/synthetic.hpp>

#include <xaikg/error.hpp>
#include <xaikg/feedback.hpp>

#include <array>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace xaikg {

namespace {

std::string padded(char prefix, std::int64_t n, int width) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%c%0*lld", prefix, width, static_cast<long long>(n));
    return buf.data();
}

}  // namespace

SyntheticDataset make_synthetic_dataset(const SyntheticSpec& spec) {
    if (spec.days < 1 || spec.materials < 1 || spec.clients < 1) {
        throw Error(ErrorCode::invalid_argument, "synthetic dataset needs at least one day, material and client");
    }
    SplitMix64 rng(spec.seed);
    // Forecast-to-history ratios cycled over the pairs so the default rules see surges, drops and
    // steady demand.
    constexpr std::array<double, 6> kRatios{1.5, 0.6, 1.0, 1.3, 0.9, 0.5};

    SyntheticDataset out;
    out.shipments_csv = "date,material_id,client_id,quantity\n";
    nlohmann::ordered_json forecasts = nlohmann::ordered_json::array();
    std::int64_t pair = 0;
    for (std::int64_t m = 1; m <= spec.materials; ++m) {
        for (std::int64_t c = 1; c <= spec.clients; ++c, ++pair) {
            const std::string material = "M" + std::to_string(m);
            const std::string client = "C" + std::to_string(c);
            const auto base = static_cast<std::int64_t>(5 + rng.next() % 16);
            for (std::int64_t d = 0; d < spec.days; ++d) {
                const auto quantity = base + static_cast<std::int64_t>(rng.next() % 5) - 2;
                out.shipments_csv += (spec.start + d).to_string() + "," + material + "," + client + "," +
                                     std::to_string(quantity) + "\n";
            }
            const double ratio = kRatios[static_cast<std::size_t>(pair) % kRatios.size()];
            forecasts.push_back({{"forecast_id", padded('F', pair + 1, 3)},
                                 {"model_id", spec.model},
                                 {"use_case", spec.use_case},
                                 {"material_id", material},
                                 {"client_id", client},
                                 {"target_date", (spec.start + spec.days).to_string()},
                                 {"created_at", (spec.start + (spec.days - 1)).to_string()},
                                 {"quantity", std::round(static_cast<double>(base) * ratio * 10.0) / 10.0}});
        }
    }
    out.forecasts_json = forecasts.dump(2) + "\n";

    for (const auto& f : forecasts) {
        for (const auto& feature : spec.features) {
            const double weight = static_cast<double>(static_cast<std::int64_t>(rng.next() % 2001) - 1000) / 1000.0;
            nlohmann::ordered_json line{
                {"forecast_id", f["forecast_id"]}, {"feature", feature}, {"weight", weight}};
            out.relevance_jsonl += line.dump() + "\n";
        }
    }
    return out;
}

}  // namespace xaikg
