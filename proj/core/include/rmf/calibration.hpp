#pragma once

#include <map>
#include <optional>
#include <string>

#include "rmf/common.hpp"

namespace rmf::calibration {

// Fitted slack constants per (statement, model), frozen after a calibration
// run. The paper's absolute constants are unspecified; only boundedness is
// reproducible, so tests compare freshly required constants against these
// frozen values with a +10% regression guard.
class FittedConstants {
  public:
    static FittedConstants defaults();

    // Missing file -> defaults (with warn flag set). Parse errors throw.
    static FittedConstants load(const std::string& path);
    void save(const std::string& path) const;

    double get(const std::string& statement, const std::string& model) const;
    std::optional<double> find(const std::string& statement, const std::string& model) const;
    void set(const std::string& statement, const std::string& model, double c);

    // true when `required` exceeds the frozen value by more than 10%
    bool regressed(const std::string& statement, const std::string& model,
                   double required) const;

    bool loaded_defaults() const { return loaded_defaults_; }
    const std::map<std::string, double>& raw() const { return values_; }

  private:
    static std::string key(const std::string& statement, const std::string& model) {
        return statement + "/" + model;
    }
    std::map<std::string, double> values_;
    bool loaded_defaults_ = false;
};

}  // namespace rmf::calibration
