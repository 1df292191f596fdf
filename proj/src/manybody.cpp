#include "momint/manybody.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>

#include "momint/basis.hpp"
#include "momint/errors.hpp"
#include "momint/momentum.hpp"
#include "momint/numerics.hpp"

namespace momint::manybody {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kMaxParticles = 20;
constexpr double kSingularDet = 1e-14;
using cd = std::complex<double>;

void check_particles(int n, const char* who) {
    if (n < 1 || n > kMaxParticles)
        throw DomainError(std::string(who) + ": particle number must be in [1, 20]");
}

OrbitalSet sample_orbitals(const std::vector<int>& indices, const GridSpec& grid) {
    OrbitalSet set;
    set.grid = grid;
    set.indices = indices;
    set.values.reserve(indices.size());
    for (int idx : indices) {
        const RealWavefunction psi = basis::eigenstate(idx, grid);
        std::vector<cd> row(psi.values.begin(), psi.values.end());
        set.values.push_back(std::move(row));
    }
    return set;
}

// In-place LU with partial pivoting on a square stack buffer; returns det.
cd lu_factor(cd* a, int n, int* piv) {
    cd det(1.0, 0.0);
    for (int c = 0; c < n; ++c) {
        int p = c;
        double best = std::abs(a[c * n + c]);
        for (int r = c + 1; r < n; ++r) {
            const double m = std::abs(a[r * n + c]);
            if (m > best) {
                best = m;
                p = r;
            }
        }
        piv[c] = p;
        if (best == 0.0) return cd(0.0, 0.0);
        if (p != c) {
            for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[p * n + k]);
            det = -det;
        }
        det *= a[c * n + c];
        const cd inv = 1.0 / a[c * n + c];
        for (int r = c + 1; r < n; ++r) {
            const cd f = a[r * n + c] * inv;
            a[r * n + c] = f;
            for (int k = c + 1; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
        }
    }
    return det;
}

cd det_only(cd* a, int n) {
    int piv[kMaxParticles];
    return lu_factor(a, n, piv);
}

// A = cofactor matrix of P (equals (P^{-1})^T det P, but finite even when
// det P vanishes).
void cofactor_matrix(const cd* p, int n, cd* a) {
    if (n == 1) {
        a[0] = cd(1.0, 0.0);
        return;
    }
    cd minor[(kMaxParticles - 1) * (kMaxParticles - 1)];
    for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
            int rr = 0;
            for (int r = 0; r < n; ++r) {
                if (r == l) continue;
                int cc = 0;
                for (int c = 0; c < n; ++c) {
                    if (c == m) continue;
                    minor[rr * (n - 1) + cc] = p[r * n + c];
                    ++cc;
                }
                ++rr;
            }
            const cd d = det_only(minor, n - 1);
            a[l * n + m] = ((l + m) & 1) ? -d : d;
        }
    }
}

// A = (P^{-1})^T det P by LU; false when P is numerically singular.
bool lu_adjugate_transpose(const cd* p, int n, cd* a) {
    cd lu[kMaxParticles * kMaxParticles];
    for (int i = 0; i < n * n; ++i) lu[i] = p[i];
    int piv[kMaxParticles];
    const cd det = lu_factor(lu, n, piv);
    if (std::abs(det) < kSingularDet) return false;
    for (int k = 0; k < n; ++k) {
        cd x[kMaxParticles];
        for (int i = 0; i < n; ++i) x[i] = cd(0.0, 0.0);
        x[k] = cd(1.0, 0.0);
        for (int c = 0; c < n; ++c)
            if (piv[c] != c) std::swap(x[c], x[piv[c]]);
        for (int r = 1; r < n; ++r)
            for (int c = 0; c < r; ++c) x[r] -= lu[r * n + c] * x[c];
        for (int r = n - 1; r >= 0; --r) {
            for (int c = r + 1; c < n; ++c) x[r] -= lu[r * n + c] * x[c];
            x[r] /= lu[r * n + r];
        }
        // inverse column k; A_{ln} = inv_{nl} det
        for (int i = 0; i < n; ++i) a[k * n + i] = x[i] * det;
    }
    return true;
}

void check_rdm(const ReducedDensityMatrix& rho, double n_particles) {
    const Eigen::Index g = rho.values.rows();
    double max_abs = 0.0, max_asym = 0.0;
    for (Eigen::Index i = 0; i < g; ++i)
        for (Eigen::Index j = i; j < g; ++j) {
            max_abs = std::max(max_abs, std::abs(rho.values(i, j)));
            max_asym = std::max(max_asym,
                                std::abs(rho.values(i, j) - std::conj(rho.values(j, i))));
        }
    if (max_asym > 1e-10 * std::max(1.0, max_abs))
        throw NumericalError("rspdm: result is not Hermitian");
    double trace = 0.0;
    const double h = rho.grid.spacing();
    for (Eigen::Index i = 0; i < g; ++i) {
        const double d = rho.values(i, i).real();
        if (d < -1e-12) throw NumericalError("rspdm: negative diagonal entry");
        const double w = (i == 0 || i + 1 == g) ? 0.5 : 1.0;
        trace += w * d;
    }
    trace *= h;
    if (std::abs(trace - n_particles) > 1e-6)
        throw NumericalError("rspdm: trace deviates from the particle number");
}

}  // namespace

OrbitalSet ground_orbitals(int n_particles, const GridSpec& grid) {
    check_particles(n_particles, "ground_orbitals");
    std::vector<int> idx(n_particles);
    for (int i = 0; i < n_particles; ++i) idx[i] = i;
    return sample_orbitals(idx, grid);
}

OrbitalSet pse_orbitals(int n_particles, const GridSpec& grid) {
    check_particles(n_particles, "pse_orbitals");
    std::vector<int> idx(n_particles);
    for (int i = 0; i < n_particles; ++i) idx[i] = 2 * i + 1;
    return sample_orbitals(idx, grid);
}

OrbitalSet imprint_orbitals(const OrbitalSet& orbitals, double phi,
                            const imprint::PhaseProfile& profile) {
    profile.validate();
    if (!std::isfinite(phi)) throw DomainError("imprint_orbitals: phi must be finite");
    OrbitalSet out;
    out.grid = orbitals.grid;
    out.indices = orbitals.indices;
    const std::size_t g = orbitals.grid.n_points;
    std::vector<cd> phase(g);
    for (std::size_t i = 0; i < g; ++i)
        phase[i] = std::polar(1.0, phi * imprint::profile_value(profile, orbitals.grid.point(i)));
    out.values.reserve(orbitals.size());
    for (const auto& row : orbitals.values) {
        std::vector<cd> v(g);
        for (std::size_t i = 0; i < g; ++i) v[i] = row[i] * phase[i];
        out.values.push_back(std::move(v));
    }
    return out;
}

ReducedDensityMatrix fermi_rspdm(const OrbitalSet& orbitals) {
    const std::size_t g = orbitals.grid.n_points;
    const std::size_t n = orbitals.size();
    if (n == 0) throw DomainError("fermi_rspdm: empty orbital set");
    ReducedDensityMatrix rho;
    rho.grid = orbitals.grid;
    rho.statistics = Statistics::fermi;
    Eigen::MatrixXcd m(n, g);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < g; ++i) m(r, i) = orbitals.values[r][i];
    rho.values = m.adjoint() * m;
    check_rdm(rho, static_cast<double>(n));
    return rho;
}

ReducedDensityMatrix tg_rspdm(const OrbitalSet& orbitals) {
    const std::size_t g = orbitals.grid.n_points;
    const int n = static_cast<int>(orbitals.size());
    check_particles(n, "tg_rspdm");
    const double h = orbitals.grid.spacing();

    // cumulative overlaps C[l][m][i] = int_{y_0}^{y_i} psi_l* psi_m dz
    std::vector<std::vector<std::vector<cd>>> overlap(
        n, std::vector<std::vector<cd>>(n));
    std::vector<cd> prod(g);
    for (int l = 0; l < n; ++l) {
        for (int m = l; m < n; ++m) {
            for (std::size_t i = 0; i < g; ++i)
                prod[i] = std::conj(orbitals.values[l][i]) * orbitals.values[m][i];
            overlap[l][m] = numerics::cumulative_trapezoid(prod, h);
            if (m != l) {
                overlap[m][l].resize(g);
                for (std::size_t i = 0; i < g; ++i)
                    overlap[m][l][i] = std::conj(overlap[l][m][i]);
            }
        }
    }

    ReducedDensityMatrix rho;
    rho.grid = orbitals.grid;
    rho.statistics = Statistics::tg;
    rho.values.resize(g, g);

    cd p[kMaxParticles * kMaxParticles];
    cd a[kMaxParticles * kMaxParticles];
    cd ab[kMaxParticles];
    for (std::size_t i = 0; i < g; ++i) {
        // coincident points: P = identity, A = identity
        double diag = 0.0;
        for (int l = 0; l < n; ++l) diag += std::norm(orbitals.values[l][i]);
        rho.values(i, i) = diag;

        for (std::size_t j = i + 1; j < g; ++j) {
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) {
                    const cd s = overlap[l][m][j] - overlap[l][m][i];
                    p[l * n + m] = ((l == m) ? cd(1.0, 0.0) : cd(0.0, 0.0)) - 2.0 * s;
                }
            if (n <= 8 || !lu_adjugate_transpose(p, n, a)) cofactor_matrix(p, n, a);
            // rho_ij = conj(psi(y_i))^T A psi(y_j)
            for (int l = 0; l < n; ++l) {
                cd acc(0.0, 0.0);
                for (int m = 0; m < n; ++m) acc += a[l * n + m] * orbitals.values[m][j];
                ab[l] = acc;
            }
            cd r(0.0, 0.0);
            for (int l = 0; l < n; ++l) r += std::conj(orbitals.values[l][i]) * ab[l];
            rho.values(i, j) = r;
            rho.values(j, i) = std::conj(r);
        }
    }
    check_rdm(rho, static_cast<double>(n));
    return rho;
}

namespace {

// weighted plane-wave vector u_m = dy w_m exp(-i q y_m)
Eigen::VectorXcd phase_vector(const GridSpec& grid, double q) {
    const std::size_t g = grid.n_points;
    const double h = grid.spacing();
    Eigen::VectorXcd u(g);
    for (std::size_t m = 0; m < g; ++m) {
        const double w = (m == 0 || m + 1 == g) ? 0.5 : 1.0;
        u(m) = std::polar(w * h, -q * grid.point(m));
    }
    return u;
}

void check_hermitian_input(const ReducedDensityMatrix& rho) {
    rho.grid.validate();
    if (rho.values.rows() != rho.values.cols() ||
        rho.values.rows() != static_cast<Eigen::Index>(rho.grid.n_points))
        throw GridError("momentum_distribution: matrix/grid size mismatch");
    const double max_abs = rho.values.cwiseAbs().maxCoeff();
    const double asym = (rho.values - rho.values.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * std::max(1.0, max_abs))
        throw DomainError("momentum_distribution: input matrix is not Hermitian");
}

MomentumDensity finalize_distribution(const ReducedDensityMatrix& rho, const GridSpec& q_grid,
                                      std::vector<cd>&& raw) {
    MomentumDensity out{q_grid, std::vector<double>(raw.size())};
    double max_re = 0.0;
    for (const cd& v : raw) max_re = std::max(max_re, std::abs(v.real()));
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (std::abs(raw[j].imag()) > 1e-10 * std::max(1.0, max_re))
            throw NumericalError("momentum_distribution: imaginary residue too large");
        if (raw[j].real() < -1e-8 * std::max(1.0, max_re))
            throw NumericalError("momentum_distribution: negative density");
        out.values[j] = raw[j].real();
    }
    // On the conjugate grid the discrete (Riemann) integral reproduces the
    // particle number exactly up to roundoff; enforce it.
    if (momentum::is_conjugate(rho.grid, q_grid)) {
        double total = 0.0;
        for (double v : out.values) total += v;
        total *= q_grid.spacing();
        double trace = 0.0;
        for (Eigen::Index i = 0; i < rho.values.rows(); ++i)
            trace += rho.values(i, i).real();
        trace *= rho.grid.spacing();
        if (std::abs(total - trace) > 1e-5)
            throw NumericalError("momentum_distribution: normalization lost");
    }
    return out;
}

}  // namespace

MomentumDensity momentum_distribution(const ReducedDensityMatrix& rho, const GridSpec& q_grid) {
    check_hermitian_input(rho);
    q_grid.validate();
    const std::size_t g = rho.grid.n_points;
    const std::size_t nq = q_grid.n_points;
    std::vector<cd> raw(nq);

    if (momentum::is_conjugate(rho.grid, q_grid)) {
        // row-wise FFT pass, then the diagonal contraction
        const double h = rho.grid.spacing();
        std::vector<cd> buf(g), dft(g);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(g),
                                          reinterpret_cast<fftw_complex*>(buf.data()),
                                          reinterpret_cast<fftw_complex*>(dft.data()),
                                          FFTW_FORWARD, FFTW_ESTIMATE);
        Eigen::MatrixXcd m1(g, nq);  // m1(r, j) = sum_m rho(r, m) u_m(q_j)
        for (std::size_t r = 0; r < g; ++r) {
            for (std::size_t m = 0; m < g; ++m) {
                const double w = (m == 0 || m + 1 == g) ? 0.5 : 1.0;
                buf[m] = rho.values(r, m) * (w * h) * ((m % 2 == 0) ? 1.0 : -1.0);
            }
            fftw_execute(plan);
            for (std::size_t j = 0; j < nq; ++j)
                m1(r, j) = dft[j] * std::polar(1.0, -q_grid.point(j) * rho.grid.lo);
        }
        fftw_destroy_plan(plan);
        for (std::size_t j = 0; j < nq; ++j) {
            const double q = q_grid.point(j);
            cd acc(0.0, 0.0);
            for (std::size_t r = 0; r < g; ++r) {
                const double w = (r == 0 || r + 1 == g) ? 0.5 : 1.0;
                acc += std::conj(std::polar(w * h, -q * rho.grid.point(r))) * m1(r, j);
            }
            raw[j] = acc / (2.0 * kPi);
        }
        return finalize_distribution(rho, q_grid, std::move(raw));
    }

    for (std::size_t j = 0; j < nq; ++j) {
        const Eigen::VectorXcd u = phase_vector(rho.grid, q_grid.point(j));
        raw[j] = u.dot(rho.values * u) / (2.0 * kPi);  // u.dot conjugates u
    }
    return finalize_distribution(rho, q_grid, std::move(raw));
}

double momentum_distribution_at(const ReducedDensityMatrix& rho, double q) {
    check_hermitian_input(rho);
    const Eigen::VectorXcd u = phase_vector(rho.grid, q);
    const cd v = u.dot(rho.values * u) / (2.0 * kPi);
    return v.real();
}

double fermi_momentum_density_at(const OrbitalSet& orbitals, double q) {
    const std::size_t g = orbitals.grid.n_points;
    const double h = orbitals.grid.spacing();
    double total = 0.0;
    for (const auto& row : orbitals.values) {
        cd acc(0.0, 0.0);
        for (std::size_t m = 0; m < g; ++m) {
            const double w = (m == 0 || m + 1 == g) ? 0.5 : 1.0;
            acc += w * row[m] * std::polar(1.0, -q * orbitals.grid.point(m));
        }
        total += std::norm(acc * h);
    }
    return total / (2.0 * kPi);
}

double peak_shift(const OrbitalSet& orbitals, double phi, const imprint::PhaseProfile& profile) {
    const OrbitalSet imprinted = imprint_orbitals(orbitals, phi, profile);
    auto nf = [&imprinted](double q) { return fermi_momentum_density_at(imprinted, q); };

    const double half_span = 2.5;
    const std::size_t n_scan = 1251;  // odd: q = 0 is a sample
    std::vector<double> qs(n_scan), vs(n_scan);
    const double step = 2.0 * half_span / static_cast<double>(n_scan - 1);
    double v_max = 0.0;
    for (std::size_t i = 0; i < n_scan; ++i) {
        qs[i] = -half_span + step * static_cast<double>(i);
        vs[i] = nf(qs[i]);
        v_max = std::max(v_max, vs[i]);
    }
    const std::size_t center = n_scan / 2;
    if (vs[center] < 1e-6 * v_max)
        throw NoPeakError("peak_shift: no central peak (momentum density vanishes at q = 0)");

    // climb from the center to the top of the central lobe
    std::size_t i = center;
    while (true) {
        const double left = (i > 0) ? vs[i - 1] : -1.0;
        const double right = (i + 1 < n_scan) ? vs[i + 1] : -1.0;
        if (left <= vs[i] && right <= vs[i]) break;
        i = (left > right) ? i - 1 : i + 1;
        if (i == 0 || i + 1 == n_scan)
            throw NoPeakError("peak_shift: central lobe maximum escaped the scan window");
    }
    auto neg = [&nf](double q) { return -nf(q); };
    return numerics::minimize_golden(neg, qs[i - 1], qs[i + 1], 1e-7);
}

}  // namespace momint::manybody
