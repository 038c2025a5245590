#pragma once

#include <vector>

#include "dq/grassmann.hpp"

namespace dq {

// Fermionic phase space with n matched (pi_j, psi_j) pairs plus optional
// external odd parameters. Registry layout: pi1..pin, psi1..psin, externals.
// External parameters are never differentiated or integrated by star
// operations; they ride along as odd constants.
struct FermiSpace {
    RegistryPtr reg;
    RegistryPtr ext_reg; // externals only; entry registry of Fock matrices
    int n = 1;
    double hbar = 1.0;
    std::vector<std::string> externals;

    static FermiSpace make(int n, double hbar, std::vector<std::string> externals = {});

    std::string pi_name(int j) const;  // 1-based
    std::string psi_name(int j) const; // 1-based
    GrassmannElement pi(int j) const;
    GrassmannElement psi(int j) const;
    GrassmannElement scalar(cplx c) const { return GrassmannElement(reg, c); }

    // All 4^n basis monomials over the internal generators (externals excluded).
    std::vector<GrassmannElement> internal_basis() const;
};

// Fermionic Moyal product in the differential representation,
//   f exp{(i hbar / 2) P_F} g,  P_F = <-d_pi ->d_psi + <-d_psi ->d_pi,
// with right derivatives acting on f and left derivatives on g.
GrassmannElement fermi_star(const FermiSpace& sp, const GrassmannElement& f,
                            const GrassmannElement& g);

// Integral representation (the triple-quantizer kernel): must agree exactly
// with fermi_star on the whole basis. n <= 2.
GrassmannElement fermi_star_integral(const FermiSpace& sp, const GrassmannElement& f,
                                     const GrassmannElement& g);

// 2^n x 2^n matrix whose entries are Grassmann elements over the external
// registry (plain complex numbers when there are no externals). Basis ordered
// by occupation bitstrings, |0...0> first.
class FockOperator {
  public:
    FockOperator() = default;
    FockOperator(int n, RegistryPtr ext_reg);

    static FockOperator identity(int n, RegistryPtr ext_reg);

    int n() const { return n_; }
    int dim() const { return 1 << n_; }
    const RegistryPtr& ext_registry() const { return ext_; }

    GrassmannElement& at(int row, int col) { return m_[row * dim() + col]; }
    const GrassmannElement& at(int row, int col) const { return m_[row * dim() + col]; }

    FockOperator operator-() const;
    friend FockOperator operator+(const FockOperator& A, const FockOperator& B);
    friend FockOperator operator-(const FockOperator& A, const FockOperator& B);
    friend FockOperator operator*(cplx s, const FockOperator& A);
    friend FockOperator operator*(const GrassmannElement& s, const FockOperator& A);
    friend FockOperator operator*(const FockOperator& A, const FockOperator& B);

    double distance(const FockOperator& o) const;

  private:
    int n_ = 0;
    RegistryPtr ext_;
    std::vector<GrassmannElement> m_;
};

// Jordan-Wigner matrices: psi_j = sqrt(hbar) (annihilator), pi_j = i sqrt(hbar)
// (creator), satisfying {psi_j, pi_k} = i hbar delta_jk exactly.
FockOperator fock_psi(const FermiSpace& sp, int j);
FockOperator fock_pi(const FermiSpace& sp, int j);

// Weyl quantization: each internal monomial maps to the antisymmetrized
// average over operator orderings; external factors multiply entries.
FockOperator fermi_weyl_quantize(const FermiSpace& sp, const GrassmannElement& f);

// (i hbar)^{-n} times the matrix trace.
GrassmannElement fermi_trace(const FermiSpace& sp, const FockOperator& A);

// Grassmann parity of a Fock operator from its occupation-parity block
// structure (combined with the parity of external entries).
Parity fock_parity(const FockOperator& A);

// Inverse Weyl map of a density-like operator, normalized so the vacuum
// projector integrates to hbar^{-n} over D pi D psi (right measure). The
// normalizing phase is a fixed per-n constant; the signed integrals of other
// states are reported as computed.
GrassmannElement fermi_wigner(const FermiSpace& sp, const FockOperator& rho);

// Integral over the full internal phase space with measure D pi D psi.
GrassmannElement fermi_phase_integral(const FermiSpace& sp, const GrassmannElement& f);

} // namespace dq
