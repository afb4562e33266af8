#include "helstrom/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "helstrom/errors.hpp"

namespace helstrom::quantum {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_probability_pair(double p1, double p2) {
    if (!(p1 > 0.0) || !(p2 > 0.0) || std::abs(p1 + p2 - 1.0) > kTolNum)
        throw ValidationError("quantum: priors must be positive and sum to one");
}

std::vector<Complex> outer(const std::vector<Complex>& v) {
    const std::size_t n = v.size();
    std::vector<Complex> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = v[i] * std::conj(v[j]);
    return m;
}

}  // namespace

HermitianMatrix::HermitianMatrix(std::size_t n) : n_(n), a_(n * n, Complex(0.0, 0.0)) {
    if (n == 0) throw ValidationError("matrix: size must be positive");
}

HermitianMatrix::HermitianMatrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), a_(std::move(entries)) {
    if (n == 0) throw ValidationError("matrix: size must be positive");
    if (a_.size() != n * n) throw ValidationError("matrix: entry count does not match size");
    for (const Complex& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("matrix: non-finite entry");
    for (std::size_t i = 0; i < n_; ++i) {
        if (std::abs(a_[i * n_ + i].imag()) > kTolNum)
            throw ValidationError("matrix: diagonal entry " + std::to_string(i) +
                                  " is not real");
        for (std::size_t j = i; j < n_; ++j)
            if (std::abs(a_[i * n_ + j] - std::conj(a_[j * n_ + i])) > kTolNum)
                throw ValidationError("matrix: entries (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") break hermiticity");
    }
    // Enforce exact hermiticity so later algebra cannot drift.
    for (std::size_t i = 0; i < n_; ++i) {
        a_[i * n_ + i] = Complex(a_[i * n_ + i].real(), 0.0);
        for (std::size_t j = i + 1; j < n_; ++j) {
            const Complex avg = 0.5 * (a_[i * n_ + j] + std::conj(a_[j * n_ + i]));
            a_[i * n_ + j] = avg;
            a_[j * n_ + i] = std::conj(avg);
        }
    }
}

void HermitianMatrix::set(std::size_t i, std::size_t j, Complex v) {
    if (i == j) v = Complex(v.real(), 0.0);
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = std::conj(v);
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
    if (o.n_ != n_) throw ValidationError("matrix: size mismatch in addition");
    HermitianMatrix r(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
    if (o.n_ != n_) throw ValidationError("matrix: size mismatch in subtraction");
    HermitianMatrix r(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
}

HermitianMatrix scale(double c, const HermitianMatrix& m) {
    HermitianMatrix r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r.set(i, j, c * m.at(i, j));
    return r;
}

double trace(const HermitianMatrix& m) {
    double t = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m.at(i, i).real();
    return t;
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.size() != b.size()) throw ValidationError("matrix: size mismatch in trace product");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) t += a.at(i, j) * b.at(j, i);
    return t.real();
}

double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.size() != b.size()) throw ValidationError("matrix: size mismatch in comparison");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
    return m;
}

EigResult eig_hermitian(const HermitianMatrix& m) {
    const std::size_t n = m.size();
    std::vector<Complex> a = m.entries();
    std::vector<Complex> v(n * n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    auto A = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
    auto V = [&](std::size_t i, std::size_t j) -> Complex& { return v[i * n + j]; };

    double scale_ref = 1e-300;
    for (const Complex& e : a) scale_ref = std::max(scale_ref, std::abs(e));
    const double stop = 1e-15 * scale_ref;

    for (int sweep = 0; n > 1; ++sweep) {
        if (sweep >= 100) throw NumericalError("eig: Jacobi sweeps exceeded the cap");
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(A(p, q)));
        if (off <= stop) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex beta = A(p, q);
                const double ab = std::abs(beta);
                if (ab <= stop) continue;
                const Complex omega = beta / ab;
                const double alpha = A(p, p).real();
                const double gamma = A(q, q).real();
                const double tau = (gamma - alpha) / (2.0 * ab);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns: new_p = c*col_p - s*conj(omega)*col_q,
                //          new_q = s*col_p + c*conj(omega)*col_q.
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex ap = A(i, p), aq = A(i, q);
                    A(i, p) = c * ap - s * std::conj(omega) * aq;
                    A(i, q) = s * ap + c * std::conj(omega) * aq;
                    const Complex vp = V(i, p), vq = V(i, q);
                    V(i, p) = c * vp - s * std::conj(omega) * vq;
                    V(i, q) = s * vp + c * std::conj(omega) * vq;
                }
                // Rows: new_p = c*row_p - s*omega*row_q,
                //       new_q = s*row_p + c*omega*row_q.
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex ap = A(p, j), aq = A(q, j);
                    A(p, j) = c * ap - s * omega * aq;
                    A(q, j) = s * ap + c * omega * aq;
                }
                A(p, q) = Complex(0.0, 0.0);
                A(q, p) = Complex(0.0, 0.0);
                A(p, p) = Complex(A(p, p).real(), 0.0);
                A(q, q) = Complex(A(q, q).real(), 0.0);
            }
    }

    EigResult res;
    res.values.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Vec diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = A(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });
    res.vectors.assign(n, std::vector<Complex>(n));
    for (std::size_t k = 0; k < n; ++k) {
        res.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) res.vectors[k][i] = V(i, order[k]);
    }

    // Reconstruction and unitarity checks certify the decomposition.
    const double tol = 1e-10 * std::max(1.0, scale_ref);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex rec(0.0, 0.0), gram(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                rec += res.values[k] * res.vectors[k][i] * std::conj(res.vectors[k][j]);
                gram += res.vectors[i][k] * std::conj(res.vectors[j][k]);
            }
            if (std::abs(rec - m.at(i, j)) > tol)
                throw NumericalError("eig: reconstruction residual too large");
            const Complex want = i == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            if (std::abs(gram - want) > 1e-10)
                throw NumericalError("eig: eigenvectors lost orthonormality");
        }
    return res;
}

PosNegParts positive_negative_parts(const HermitianMatrix& m) {
    const EigResult eig = eig_hermitian(m);
    const std::size_t n = m.size();
    std::vector<Complex> plus(n * n, Complex(0.0, 0.0)), minus(n * n, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        const auto rank1 = outer(eig.vectors[k]);
        const double lambda = eig.values[k];
        if (lambda >= 0.0)
            for (std::size_t e = 0; e < n * n; ++e) plus[e] += lambda * rank1[e];
        else
            for (std::size_t e = 0; e < n * n; ++e) minus[e] -= lambda * rank1[e];
    }
    return PosNegParts{HermitianMatrix(n, std::move(plus)), HermitianMatrix(n, std::move(minus))};
}

double trace_norm(const HermitianMatrix& m) {
    double s = 0.0;
    for (double lambda : eig_hermitian(m).values) s += std::abs(lambda);
    return s;
}

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
    if (std::abs(trace(m_) - 1.0) > kTolNum)
        throw ValidationError("density matrix: trace must be one");
    const EigResult eig = eig_hermitian(m_);
    if (eig.values.back() < -kTolNum)
        throw ValidationError("density matrix: negative eigenvalue " +
                              std::to_string(eig.values.back()));
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix bloch_to_density(const BlochVector& b) {
    if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(b.z))
        throw ValidationError("bloch: non-finite component");
    if (b.norm() > 1.0 + kTolNum)
        throw ValidationError("bloch: vector leaves the unit ball");
    std::vector<Complex> e = {Complex(0.5 * (1.0 + b.z), 0.0), Complex(0.5 * b.x, -0.5 * b.y),
                              Complex(0.5 * b.x, 0.5 * b.y), Complex(0.5 * (1.0 - b.z), 0.0)};
    return DensityMatrix(HermitianMatrix(2, std::move(e)));
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
    if (rho.size() != 2) throw ValidationError("bloch: only defined for qubits");
    const HermitianMatrix& m = rho.matrix();
    BlochVector b;
    b.x = 2.0 * m.at(1, 0).real();
    b.y = 2.0 * m.at(1, 0).imag();
    b.z = m.at(0, 0).real() - m.at(1, 1).real();
    return b;
}

QuantumBinaryResult quantum_binary_helstrom(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                            double p1, double p2) {
    check_probability_pair(p1, p2);
    if (rho1.size() != rho2.size())
        throw ValidationError("quantum: states must act on the same system");
    const std::size_t n = rho1.size();
    const HermitianMatrix x = scale(p1, rho1.matrix()) - scale(p2, rho2.matrix());
    const PosNegParts parts = positive_negative_parts(x);
    const double wplus = trace(parts.plus);
    const double wminus = trace(parts.minus);

    QuantumBinaryResult res{.p_success = 0.0,
                            .generic = false,
                            .tilde_p = {},
                            .sigma1 = std::nullopt,
                            .sigma2 = std::nullopt,
                            .reference = std::nullopt,
                            .projector = HermitianMatrix(n),
                            .mixture_residual = 0.0,
                            .success_residual = 0.0};
    // Either spectral part vanishing collapses the problem: guessing the
    // dominant state is already optimal.
    constexpr double kPartFloor = 1e-12;
    res.generic = wplus > kPartFloor && wminus > kPartFloor;
    res.p_success = res.generic ? p2 + wplus : std::max(p1, p2);
    if (res.generic && std::abs((p2 + wplus) - (p1 + wminus)) > kTolNum)
        throw NumericalError("quantum: the two closed forms disagree");

    // Projector onto the nonnegative eigenspace of x is an optimal effect.
    const EigResult eig = eig_hermitian(x);
    std::vector<Complex> proj(n * n, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        if (eig.values[k] < 0.0) continue;
        const auto rank1 = outer(eig.vectors[k]);
        for (std::size_t e = 0; e < n * n; ++e) proj[e] += rank1[e];
    }
    res.projector = HermitianMatrix(n, std::move(proj));
    const double achieved = p1 * trace_product(res.projector, rho1.matrix()) + p2 -
                            p2 * trace_product(res.projector, rho2.matrix());
    res.success_residual = std::abs(achieved - res.p_success);
    if (res.success_residual > kTolNum)
        throw NumericalError("quantum: projective measurement misses the optimum");

    if (res.generic) {
        res.tilde_p = {p1 / res.p_success, p2 / res.p_success};
        res.sigma1 = DensityMatrix(scale(1.0 / wminus, parts.minus));
        res.sigma2 = DensityMatrix(scale(1.0 / wplus, parts.plus));
        const HermitianMatrix ref1 =
            scale(res.tilde_p[0], rho1.matrix()) +
            scale(1.0 - res.tilde_p[0], res.sigma1->matrix());
        const HermitianMatrix ref2 =
            scale(res.tilde_p[1], rho2.matrix()) +
            scale(1.0 - res.tilde_p[1], res.sigma2->matrix());
        res.mixture_residual = max_abs_diff(ref1, ref2);
        if (res.mixture_residual > kTolNum)
            throw NumericalError("quantum: conjugate mixtures disagree on the reference");
        res.reference = DensityMatrix(ref1);
    }
    return res;
}

QubitFamilyResult qubit_geometric_family(const BlochVector& b1, const BlochVector& b2) {
    bloch_to_density(b1);  // validates
    bloch_to_density(b2);
    const double dx = b1.x - b2.x, dy = b1.y - b2.y, dz = b1.z - b2.z;
    const double delta = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (delta <= kTolGeom) throw ValidationError("qubit family: states coincide");
    QubitFamilyResult r;
    r.c1 = BlochVector{-dx / delta, -dy / delta, -dz / delta};
    r.c2 = BlochVector{dx / delta, dy / delta, dz / delta};
    r.q = 2.0 / (2.0 + delta);
    r.ratio = 0.5 * (1.0 + 0.5 * delta);
    const double f = 1.0 / (2.0 + delta);
    r.reference = BlochVector{f * (b1.x + b2.x), f * (b1.y + b2.y), f * (b1.z + b2.z)};
    return r;
}

SymmetricEnsemble symmetric_states(std::size_t n, double theta) {
    if (n < 2) throw ValidationError("symmetric states: need at least two states");
    if (!(theta > 0.0) || theta > kPi / 2.0 + 1e-12)
        throw ValidationError("symmetric states: angle must lie in (0, pi/2]");
    SymmetricEnsemble ens;
    ens.n = n;
    ens.theta = theta;
    for (std::size_t j = 0; j < n; ++j) {
        const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        const std::vector<Complex> psi = {Complex(std::cos(theta / 2.0), 0.0),
                                          std::polar(std::sin(theta / 2.0), phi)};
        ens.states.emplace_back(HermitianMatrix(2, outer(psi)));
        ens.bloch.push_back(BlochVector{std::sin(theta) * std::cos(phi),
                                        std::sin(theta) * std::sin(phi), std::cos(theta)});
    }
    return ens;
}

double symmetric_conjugate_weight(double theta, double xi) {
    const double denom = 2.0 * std::sin(theta + xi) * std::cos(xi);
    if (!(denom > 0.0))
        throw ValidationError("symmetric weight: angles outside the admissible range");
    return 1.0 - std::sin(theta) / denom;
}

double symmetric_conjugate_weight_chord(double theta, double xi) {
    const double denom = std::sin(theta + 2.0 * xi) + std::sin(theta);
    if (!(denom > 0.0))
        throw ValidationError("symmetric weight: angles outside the admissible range");
    return 1.0 - std::sin(theta) / denom;
}

double symmetric_optimal_angle(double theta) { return kPi / 4.0 - theta / 2.0; }

SymmetricOptimalResult symmetric_optimal(std::size_t n, double theta) {
    const SymmetricEnsemble ens = symmetric_states(n, theta);
    const double st = std::sin(theta);
    const BlochVector ref_bloch{0.0, 0.0, std::cos(theta) / (1.0 + st)};
    SymmetricOptimalResult res{.p_success = (1.0 + st) / static_cast<double>(n),
                               .ratio = (1.0 + st) / static_cast<double>(n),
                               .tilde_p = Vec(n, 1.0 / (1.0 + st)),
                               .conjugates = {},
                               .povm = {},
                               .reference = bloch_to_density(ref_bloch),
                               .reference_bloch = ref_bloch,
                               .povm_completeness_residual = 0.0,
                               .annihilation_residual = 0.0,
                               .achieved_success = 0.0,
                               .mixture_residual = 0.0};

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    HermitianMatrix esum(2);
    std::vector<Complex> identity = {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
                                     Complex(1.0, 0.0)};
    for (std::size_t j = 0; j < n; ++j) {
        const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        const std::vector<Complex> conj_ket = {Complex(inv_sqrt2, 0.0),
                                               std::polar(inv_sqrt2, phi + kPi)};
        res.conjugates.emplace_back(HermitianMatrix(2, outer(conj_ket)));
        const std::vector<Complex> chi = {Complex(inv_sqrt2, 0.0), std::polar(inv_sqrt2, phi)};
        res.povm.push_back(scale(2.0 / static_cast<double>(n), HermitianMatrix(2, outer(chi))));
        esum = esum + res.povm.back();
    }
    res.povm_completeness_residual = max_abs_diff(esum, HermitianMatrix(2, identity));

    const double q = 1.0 / (1.0 + st);
    for (std::size_t j = 0; j < n; ++j) {
        res.annihilation_residual = std::max(
            res.annihilation_residual,
            std::abs(trace_product(res.povm[j], res.conjugates[j].matrix())));
        res.achieved_success +=
            trace_product(res.povm[j], ens.states[j].matrix()) / static_cast<double>(n);
        const HermitianMatrix mixed = scale(q, ens.states[j].matrix()) +
                                      scale(1.0 - q, res.conjugates[j].matrix());
        res.mixture_residual =
            std::max(res.mixture_residual, max_abs_diff(mixed, res.reference.matrix()));
    }
    return res;
}

}  // namespace helstrom::quantum
