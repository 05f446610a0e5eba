#pragma once

#include "reebarr/arrangement.h"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace reebarr {

struct Labeling {
    std::vector<std::size_t> m;  // circle index -> label
    std::vector<int> m0;         // label -> multiplicity
};

/// Greedy colouring of the circles that meet in the closure; m0 is zero.
Labeling default_labeling(const Arrangement& arr);

/// Throws LabelingInvalid when sizes, surjectivity or distinctness fail.
void check_labeling(const Arrangement& arr, const Labeling& lab);

/// Exponent vector over the model variables -> coefficient.
using Polynomial = std::map<std::vector<int>, double>;

double evaluate(const Polynomial& p, const std::vector<double>& v);
std::vector<double> gradient(const Polynomial& p, const std::vector<double>& v);

struct AlgebraicModel {
    Labeling labeling;
    std::vector<std::string> variables;  // x1, x2, then y<a>_<k>
    std::vector<Polynomial> equations;   // one per label
    std::vector<int> sign_vector;        // per circle, -1 Inside, +1 Outside
    std::size_t ambient_dim = 0;
    std::size_t model_dim = 0;

    std::string text() const;
    std::string to_json() const;
};

/// Equation per label a: prod over m(j)=a of sigma_j f_j(x) minus |y_a|^2.
AlgebraicModel emit_model(const Arrangement& arr, const Labeling& lab);

/// Same construction with an explicit sign vector (used for negative controls).
AlgebraicModel emit_model_with_signs(const Arrangement& arr, const Labeling& lab, const std::vector<int>& signs);

/// Coefficient lists parsed back from to_json output.
std::vector<Polynomial> parse_model_equations(const std::string& json_text);

struct SpotCheckReport {
    std::size_t interior_samples = 0;
    std::size_t exterior_samples = 0;
    std::size_t violation_count = 0;
    std::vector<std::string> violations;  // first few, for display
};

/// Interior samples must lift with a full-rank Jacobian; exterior samples
/// violating exactly one circle condition must not lift.
SpotCheckReport spot_check_model(const AlgebraicModel& model, const Arrangement& arr, std::size_t n_samples,
                                 std::uint64_t seed = 1);

}  // namespace reebarr
