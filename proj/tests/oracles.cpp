#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace bds::oracle {

ComplexMatrix random_matrix(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
  return random_matrix(rng, dim).hermitian_part();
}

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
  ComplexMatrix m = random_matrix(rng, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    for (std::size_t prev = 0; prev < col; ++prev) {
      Complex overlap = 0.0;
      for (std::size_t r = 0; r < dim; ++r) overlap += std::conj(m(r, prev)) * m(r, col);
      for (std::size_t r = 0; r < dim; ++r) m(r, col) -= overlap * m(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm += std::norm(m(r, col));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < dim; ++r) m(r, col) /= norm;
  }
  return m;
}

ComplexMatrix random_psd(Rng& rng, std::size_t dim) {
  const ComplexMatrix g = random_matrix(rng, dim);
  return (g * g.adjoint()).hermitian_part();
}

DensityMatrix random_state(Rng& rng, std::size_t n_qubits, std::size_t rank) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (rank == 0 || rank > dim) rank = dim;
  std::normal_distribution<double> g;
  ComplexMatrix rho(dim);
  for (std::size_t r = 0; r < rank; ++r) {
    std::vector<Complex> v(dim);
    for (auto& z : v) z = Complex(g(rng), g(rng));
    rho += ComplexMatrix::outer(v);
  }
  rho *= Complex(1.0 / rho.trace().real());
  return DensityMatrix(rho.hermitian_part());
}

BdsSpec random_spec(Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  double x[4];
  double sum = 0.0;
  for (double& v : x) sum += (v = e(rng));
  BdsSpec s{x[0] / sum, x[1] / sum, x[2] / sum, 0.0};
  s.p11 = 1.0 - s.p00 - s.p01 - s.p10;
  if (s.p11 < 0.0) s.p11 = 0.0;
  return s;
}

double pauli_expectation(const ComplexMatrix& rho, int j, int k) {
  const ComplexMatrix& a = pauli(j);
  const ComplexMatrix& b = pauli(k);
  Complex sum = 0.0;
  // Tr(rho (A (x) B)) = sum rho[(i,k'),(j,l)] A[j,i] B[l,k']
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t kk = 0; kk < 2; ++kk) {
      for (std::size_t jj = 0; jj < 2; ++jj) {
        for (std::size_t l = 0; l < 2; ++l) {
          sum += rho(i * 2 + kk, jj * 2 + l) * a(jj, i) * b(l, kk);
        }
      }
    }
  }
  return sum.real();
}

double entropy_bits(const ComplexMatrix& m) {
  std::vector<double> lambdas;
  if (m.dim() == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    lambdas = {0.5 * (a + d) - r, 0.5 * (a + d) + r};
  } else {
    lambdas = hermitian_eigenvalues(m.hermitian_part());
  }
  double s = 0.0;
  for (double l : lambdas) {
    if (l > 1e-14) s -= l * std::log2(l);
  }
  return s;
}

namespace {

ComplexMatrix trace_out_b(const ComplexMatrix& m) {
  ComplexMatrix out(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  }
  return out;
}

ComplexMatrix trace_out_a(const ComplexMatrix& m) {
  ComplexMatrix out(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = m(i, j) + m(2 + i, 2 + j);
  }
  return out;
}

double dense_mutual_information(const ComplexMatrix& x) {
  return entropy_bits(trace_out_b(x)) + entropy_bits(trace_out_a(x)) - entropy_bits(x);
}

}  // namespace

double brute_force_mutual_information(const DensityMatrix& rho) {
  return dense_mutual_information(rho.matrix());
}

double brute_force_classical_correlation(const DensityMatrix& rho, int theta_steps,
                                         int phi_steps) {
  constexpr double kPi = std::numbers::pi;
  const ComplexMatrix& m = rho.matrix();
  double best = -1.0;
  for (int i = 0; i < theta_steps; ++i) {
    const double theta = kPi * i / (theta_steps - 1);
    for (int j = 0; j < phi_steps; ++j) {
      const double phi = 2.0 * kPi * j / (phi_steps - 1);
      // |n+> = (cos t/2, e^{i phi} sin t/2); |n-> orthogonal to it.
      const Complex up(std::cos(theta / 2.0), 0.0);
      const Complex dn = std::polar(std::sin(theta / 2.0), phi);
      const Complex plus[2] = {up, dn};
      const Complex minus[2] = {-std::conj(dn), std::conj(up)};
      ComplexMatrix measured(4);
      for (const Complex* v : {plus, minus}) {
        ComplexMatrix proj(2);
        for (std::size_t r = 0; r < 2; ++r) {
          for (std::size_t c = 0; c < 2; ++c) proj(r, c) = v[r] * std::conj(v[c]);
        }
        const ComplexMatrix full = kron(ComplexMatrix::identity(2), proj);
        measured += full * m * full;
      }
      best = std::max(best, dense_mutual_information(measured));
    }
  }
  return best;
}

double brute_force_discord(const DensityMatrix& rho, int theta_steps, int phi_steps) {
  return std::max(0.0, brute_force_mutual_information(rho) -
                           brute_force_classical_correlation(rho, theta_steps, phi_steps));
}

ComplexMatrix superop_on_first_qubit(const ComplexMatrix& superop, const ComplexMatrix& rho) {
  ComplexMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t l = 0; l < 2; ++l) {
          Complex acc = 0.0;
          for (std::size_t ip = 0; ip < 2; ++ip) {
            for (std::size_t jp = 0; jp < 2; ++jp) {
              acc += superop(i * 2 + j, ip * 2 + jp) * rho(ip * 2 + k, jp * 2 + l);
            }
          }
          out(i * 2 + k, j * 2 + l) = acc;
        }
      }
    }
  }
  return out;
}

ComplexMatrix circuit_unitary(const Circuit& circuit) {
  const std::size_t n = circuit.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix total = ComplexMatrix::identity(dim);
  for (const Gate& g : circuit.gates()) {
    ComplexMatrix u;
    if (g.kind == GateKind::kCnot) {
      const std::size_t cmask = std::size_t{1} << (n - 1 - g.targets[0]);
      const std::size_t tmask = std::size_t{1} << (n - 1 - g.targets[1]);
      u = ComplexMatrix(dim);
      for (std::size_t x = 0; x < dim; ++x) u((x & cmask) ? (x ^ tmask) : x, x) = 1.0;
    } else {
      u = ComplexMatrix::identity(1);
      for (std::size_t q = 0; q < n; ++q) {
        u = kron(u, q == g.targets[0] ? g.matrix() : ComplexMatrix::identity(2));
      }
    }
    total = u * total;
  }
  return total;
}

}  // namespace bds::oracle
