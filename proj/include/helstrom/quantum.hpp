#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "helstrom/linalg.hpp"

namespace helstrom::quantum {

using Complex = std::complex<double>;

// Dense Hermitian matrix, row-major. Construction from entries enforces
// hermiticity within kTolNum and stores the exactly symmetrized matrix.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(std::size_t n);
    HermitianMatrix(std::size_t n, std::vector<Complex> entries);

    std::size_t size() const { return n_; }
    Complex at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, Complex v);  // keeps the mirror entry in sync
    const std::vector<Complex>& entries() const { return a_; }

    HermitianMatrix operator+(const HermitianMatrix& o) const;
    HermitianMatrix operator-(const HermitianMatrix& o) const;

  private:
    std::size_t n_;
    std::vector<Complex> a_;
};

HermitianMatrix scale(double c, const HermitianMatrix& m);
double trace(const HermitianMatrix& m);
// tr(a b), real for Hermitian arguments.
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);
// Largest absolute entry of a - b.
double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b);

struct EigResult {
    Vec values;                                 // descending
    std::vector<std::vector<Complex>> vectors;  // vectors[k] pairs with values[k]
};

// Cyclic Jacobi diagonalization with complex plane rotations. The result is
// checked by reconstruction and unitarity residuals (<= 1e-10 scaled);
// failure to converge within 100 sweeps raises NumericalError.
EigResult eig_hermitian(const HermitianMatrix& m);

struct PosNegParts {
    HermitianMatrix plus;   // sum over eigenvalues >= 0
    HermitianMatrix minus;  // minus the sum over eigenvalues < 0; both PSD
};

PosNegParts positive_negative_parts(const HermitianMatrix& m);
double trace_norm(const HermitianMatrix& m);  // sum of |eigenvalues|

// Unit-trace positive semidefinite matrix (within kTolNum at construction).
class DensityMatrix {
  public:
    explicit DensityMatrix(HermitianMatrix m);
    const HermitianMatrix& matrix() const { return m_; }
    std::size_t size() const { return m_.size(); }

  private:
    HermitianMatrix m_;
};

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;
    double norm() const;
};

// Qubit parameterizations: rho = (I + b . sigma) / 2 with |b| <= 1.
DensityMatrix bloch_to_density(const BlochVector& b);
BlochVector density_to_bloch(const DensityMatrix& rho);

struct QuantumBinaryResult {
    double p_success = 0.0;
    bool generic = false;  // both spectral parts of p1 rho1 - p2 rho2 are nonzero
    Vec tilde_p;           // p_i / p_success (generic case)
    std::optional<DensityMatrix> sigma1, sigma2;  // conjugate states (generic case)
    std::optional<DensityMatrix> reference;
    HermitianMatrix projector;      // optimal effect: project onto the nonnegative part
    double mixture_residual = 0.0;  // reference agreement between the two mixtures
    double success_residual = 0.0;  // projective measurement against p_success
};

// Two-state quantum discrimination via the spectral split of
// p1 rho1 - p2 rho2. Returns the optimal success probability together with
// the conjugate pair certifying it.
QuantumBinaryResult quantum_binary_helstrom(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                            double p1, double p2);

struct QubitFamilyResult {
    BlochVector c1, c2;      // antipodal unit conjugates along b2 - b1 and b1 - b2
    BlochVector reference;   // (b1 + b2) / (2 + |b1 - b2|)
    double q = 0.0;          // conjugate weight 2 / (2 + |b1 - b2|)
    double ratio = 0.0;      // (2 + |b1 - b2|) / 4 = optimal success probability
};

// Closed-form family for two equiprobable qubit states given by their Bloch
// vectors. The conjugates are orthogonal pure states, so the ratio is tight.
QubitFamilyResult qubit_geometric_family(const BlochVector& b1, const BlochVector& b2);

struct SymmetricEnsemble {
    std::size_t n = 0;
    double theta = 0.0;
    std::vector<DensityMatrix> states;  // pure, phases 2 pi j / n on the cone of angle theta
    std::vector<BlochVector> bloch;
};

// Symmetric pure-state ensemble: cos(theta/2)|0> + sin(theta/2) e^{i phi_j}|1>
// with phi_j = 2 pi j / n, for n >= 2 and theta in (0, pi/2].
SymmetricEnsemble symmetric_states(std::size_t n, double theta);

// Conjugate weight of the one-parameter family whose conjugates sit at polar
// angle theta + 2 xi with flipped phases. Two algebraically equal forms.
double symmetric_conjugate_weight(double theta, double xi);
double symmetric_conjugate_weight_chord(double theta, double xi);
// The weight is maximal at xi = pi/4 - theta/2, where it equals 1/(1+sin theta).
double symmetric_optimal_angle(double theta);

struct SymmetricOptimalResult {
    double p_success = 0.0;  // (1 + sin theta) / n
    double ratio = 0.0;      // equal to p_success; the family is tight
    Vec tilde_p;             // all entries 1 / (1 + sin theta)
    std::vector<DensityMatrix> conjugates;
    std::vector<HermitianMatrix> povm;  // rank-one effects (2/n) |chi_j><chi_j|
    DensityMatrix reference;
    BlochVector reference_bloch;  // (0, 0, cos theta / (1 + sin theta))
    double povm_completeness_residual = 0.0;  // largest entry of sum E - I
    double annihilation_residual = 0.0;       // max_j tr(E_j sigma_j)
    double achieved_success = 0.0;            // success of the POVM on the ensemble
    double mixture_residual = 0.0;            // reference agreement over j
};

// Optimal discrimination of the symmetric ensemble with uniform priors,
// assembled from the closed-form conjugates and measurement.
SymmetricOptimalResult symmetric_optimal(std::size_t n, double theta);

}  // namespace helstrom::quantum
