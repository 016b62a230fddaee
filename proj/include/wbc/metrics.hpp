#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace wbc {

/// Probabilities over the 16 four-bit strings, indexed by value with qubit 1 as the most
/// significant bit ("0011" -> 3).
using BitstringDistribution = std::array<double, 16>;

using DensityMatrix16 = Eigen::Matrix<std::complex<double>, 16, 16>;
using StateVector16 = Eigen::Matrix<std::complex<double>, 16, 1>;

inline constexpr double kMetricsTolerance = 1e-9;

/// Throws ParameterError unless every entry is finite and >= 0 and the sum is 1 within tolerance.
void validate_distribution(const BitstringDistribution& p, double tol = kMetricsTolerance);

BitstringDistribution ideal_bitstring_distribution();
BitstringDistribution uniform_distribution();

/// sum_s sqrt(p(s) q(s)).
double bhattacharyya_coefficient(const BitstringDistribution& p, const BitstringDistribution& q);
/// Squared Bhattacharyya coefficient.
double classical_fidelity(const BitstringDistribution& p, const BitstringDistribution& q);

/// The ideal singlet state vector.
StateVector16 singlet_state();
DensityMatrix16 pure_density(const StateVector16& v);

/// Throws ParameterError naming the failed check: Hermitian, unit trace, eigenvalues >= -tol.
void validate_density_matrix(const DensityMatrix16& rho, double tol = kMetricsTolerance);

/// <psi| rho |psi> for the ideal singlet. For a pure target this equals the Uhlmann fidelity.
double quantum_fidelity_pure_target(const DensityMatrix16& rho);

/// JSON object mapping four-bit strings to non-negative integer counts; missing strings count
/// zero. Throws InputError on malformed JSON, bad keys, bad values or a zero total.
BitstringDistribution ingest_counts(const std::string& json_text);
BitstringDistribution ingest_counts_file(const std::string& path);

/// JSON array of 16 rows, each 16 [re, im] pairs. Throws InputError on shape or type errors;
/// the physical checks of validate_density_matrix are separate.
DensityMatrix16 ingest_density_matrix(const std::string& json_text);
DensityMatrix16 ingest_density_matrix_file(const std::string& path);

}  // namespace wbc
