#include "rmf/calibration.hpp"

#include <fstream>

#include "json.hpp"

namespace rmf::calibration {

FittedConstants FittedConstants::defaults() {
    FittedConstants c;
    c.loaded_defaults_ = true;
    // Conservative fallbacks; the frozen file in calib/ is authoritative.
    c.values_ = {
        {"epr1_consistency/steinhaus", 10.0},
        {"epr2_consistency/rademacher", 10.0},
        {"epr_second_form/steinhaus", 5.0},
        {"epr_second_form/rademacher", 5.0},
        {"theorem1_band/steinhaus", 3.0},
        {"theorem1_oracle/steinhaus", 3.0},
        {"corollary1/steinhaus", 4.0},
        {"corollary1/rademacher", 4.0},
        {"key_prop1/steinhaus", 4.0},
        {"key_prop2/rademacher", 4.0},
        {"ntr1_ratio/any", 20.0},
        {"prop1/steinhaus", 4.0},
        {"prop3/steinhaus", 0.1},
        {"prop2/rademacher", 4.0},
        {"prop4/rademacher", 0.1},
    };
    return c;
}

FittedConstants FittedConstants::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return defaults();
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("calibration parse error: ") + e.what());
    }
    FittedConstants c = defaults();
    c.loaded_defaults_ = false;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number())
            throw domain_error("calibration: non-numeric constant for " + it.key());
        c.values_[it.key()] = it.value().get<double>();
    }
    return c;
}

void FittedConstants::save(const std::string& path) const {
    nlohmann::json j(values_);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("calibration: cannot write " + path);
    out << j.dump(2) << "\n";
}

double FittedConstants::get(const std::string& statement, const std::string& model) const {
    auto it = values_.find(key(statement, model));
    if (it == values_.end())
        throw domain_error("calibration: no constant for " + key(statement, model));
    return it->second;
}

std::optional<double> FittedConstants::find(const std::string& statement,
                                            const std::string& model) const {
    auto it = values_.find(key(statement, model));
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

void FittedConstants::set(const std::string& statement, const std::string& model, double c) {
    values_[key(statement, model)] = c;
}

bool FittedConstants::regressed(const std::string& statement, const std::string& model,
                                double required) const {
    return required > 1.10 * get(statement, model);
}

}  // namespace rmf::calibration
