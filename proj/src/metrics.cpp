#include "wbc/metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wbc/rational.hpp"
#include "wbc/source.hpp"

namespace wbc {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int parse_bit_key(const std::string& key) {
  if (key.size() != 4) throw InputError("key '" + key + "' is not a four-bit string");
  int v = 0;
  for (char c : key) {
    if (c != '0' && c != '1') throw InputError("key '" + key + "' is not a four-bit string");
    v = 2 * v + (c - '0');
  }
  return v;
}

}  // namespace

void validate_distribution(const BitstringDistribution& p, double tol) {
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) throw ParameterError("distribution entries must be finite and non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol) throw ParameterError("distribution must sum to 1");
}

BitstringDistribution ideal_bitstring_distribution() {
  BitstringDistribution p{};
  const auto exact = ideal_distribution();
  for (std::size_t i = 0; i < 16; ++i) p[i] = to_double(exact[i]);
  return p;
}

BitstringDistribution uniform_distribution() {
  BitstringDistribution p;
  p.fill(1.0 / 16.0);
  return p;
}

double bhattacharyya_coefficient(const BitstringDistribution& p, const BitstringDistribution& q) {
  validate_distribution(p);
  validate_distribution(q);
  double s = 0.0;
  for (std::size_t i = 0; i < 16; ++i) s += std::sqrt(p[i] * q[i]);
  return s;
}

double classical_fidelity(const BitstringDistribution& p, const BitstringDistribution& q) {
  const double b = bhattacharyya_coefficient(p, q);
  return std::min(1.0, b * b);
}

StateVector16 singlet_state() {
  StateVector16 v;
  const auto amp = singlet_amplitude_numerators();
  const double scale = 1.0 / (2.0 * std::sqrt(3.0));
  for (int i = 0; i < 16; ++i) v(i) = amp[static_cast<std::size_t>(i)] * scale;
  return v;
}

DensityMatrix16 pure_density(const StateVector16& v) {
  return v * v.adjoint();
}

void validate_density_matrix(const DensityMatrix16& rho, double tol) {
  if (!rho.allFinite()) throw ParameterError("density matrix has non-finite entries");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) throw ParameterError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > tol) {
    throw ParameterError("density matrix trace is not 1");
  }
  const DensityMatrix16 h = (rho + rho.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<DensityMatrix16> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ParameterError("density matrix eigenvalues did not converge");
  if (solver.eigenvalues().minCoeff() < -tol) throw ParameterError("density matrix has a negative eigenvalue");
}

double quantum_fidelity_pure_target(const DensityMatrix16& rho) {
  validate_density_matrix(rho);
  // psi = a / (2 sqrt 3) with integer a, so <psi|rho|psi> = a^T rho a / 12
  const auto amp = singlet_amplitude_numerators();
  std::complex<double> s = 0.0;
  for (int i = 0; i < 16; ++i) {
    if (amp[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < 16; ++j) {
      if (amp[static_cast<std::size_t>(j)] == 0) continue;
      s += static_cast<double>(amp[static_cast<std::size_t>(i)] * amp[static_cast<std::size_t>(j)]) * rho(i, j);
    }
  }
  return std::clamp(s.real() / 12.0, 0.0, 1.0);
}

BitstringDistribution ingest_counts(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed counts JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("counts file must hold a JSON object of bitstring -> count");
  std::array<std::uint64_t, 16> counts{};
  std::uint64_t total = 0;
  for (const auto& [key, value] : j.items()) {
    const int index = parse_bit_key(key);
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
      throw InputError("count for '" + key + "' must be a non-negative integer");
    }
    counts[static_cast<std::size_t>(index)] += value.get<std::uint64_t>();
    total += value.get<std::uint64_t>();
  }
  if (total == 0) throw InputError("counts sum to zero");
  BitstringDistribution p{};
  for (std::size_t i = 0; i < 16; ++i) p[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  return p;
}

BitstringDistribution ingest_counts_file(const std::string& path) {
  return ingest_counts(read_file(path));
}

DensityMatrix16 ingest_density_matrix(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed density matrix JSON: ") + e.what());
  }
  if (!j.is_array() || j.size() != 16) throw InputError("density matrix must be an array of 16 rows");
  DensityMatrix16 rho;
  for (int r = 0; r < 16; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 16) {
      throw InputError("row " + std::to_string(r) + " must hold 16 [re, im] pairs");
    }
    for (int c = 0; c < 16; ++c) {
      const auto& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw InputError("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") must be [re, im]");
      }
      rho(r, c) = {z[0].get<double>(), z[1].get<double>()};
    }
  }
  return rho;
}

DensityMatrix16 ingest_density_matrix_file(const std::string& path) {
  return ingest_density_matrix(read_file(path));
}

}  // namespace wbc
