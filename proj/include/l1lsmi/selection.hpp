#pragma once

#include "l1lsmi/data/dataset.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace l1lsmi {

/// Output of every selector.
struct SelectionResult {
    data::FeatureIndexSet selected;
    Eigen::VectorXd scores;               // per-feature score or weight, when the method has one
    std::vector<int> ranking;             // 0-based feature order, for ranking methods
    bool flagged = false;                 // size differs from the requested k
    std::vector<double> radius_trace;     // l1 radii tried, in order
    std::vector<double> objective_trace;  // objective of the chosen solve
    std::map<std::string, std::string> diagnostics;
};

}  // namespace l1lsmi
