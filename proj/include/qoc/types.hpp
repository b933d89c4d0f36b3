#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace qoc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One estimated operating characteristic.
struct OCEstimate {
    std::string name;
    double value = 0.0;
    double se = 0.0;
    std::int64_t replicates = 0;
    double seconds = 0.0;  // wall clock of the replicate loop that produced it
};

using OCEstimates = std::vector<OCEstimate>;

inline const OCEstimate& find_estimate(const OCEstimates& ests, const std::string& name) {
    for (const auto& e : ests)
        if (e.name == name) return e;
    throw std::out_of_range("no estimate named " + name);
}

}  // namespace qoc
