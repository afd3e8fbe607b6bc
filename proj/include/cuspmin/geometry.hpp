#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cuspmin {

// Quantities of the truncated tetrahedron with one ideal vertex, angles pi/3
// at the ideal vertex and theta = pi / 3k elsewhere.
template <class S>
struct GeometricData {
    int k = 0;
    S theta{};
    S cosh_d{}, cosh_p{}, cosh_l1{}, cosh_l2{};
    S z{}, l1_tilde{}, l2_tilde{};  // Gram entries
};

template <class S = double>
GeometricData<S> geometry_params(int k);

template <class S = double>
Eigen::Matrix<S, 7, 7> gram_numeric(int k);

template <class S>
struct SignatureResult {
    Eigen::Matrix<S, 7, 1> eigenvalues;  // ascending
    int positive = 0, negative = 0, zero = 0;
    // Columns are face normals in R^4 with the form diag(form).
    Eigen::Matrix<S, 4, 7> normals;
    std::array<int, 4> form{};
    S reconstruction_error{};
};

template <class S = double>
SignatureResult<S> gram_numeric_signature(int k);

// Spence's dilogarithm for |z| <= 1 (up to a 1e-12 slack).
template <class S = double>
std::complex<S> dilog(std::complex<S> z);

// D(e^{i theta}) = sum sin(n theta) / n^2.
template <class S = double>
S bloch_wigner(S theta);

// Bloch-Wigner function at any complex point.
template <class S = double>
S bloch_wigner(std::complex<S> z);

// Dihedral angles indexed by the pair of faces meeting along the edge.
template <class S>
struct UshijimaInput {
    S t12{}, t13{}, t14{}, t23{}, t24{}, t34{};
};

template <class S = double>
UshijimaInput<S> mkk_angles(int k);

enum class VolumeMethod { ClosedForm, Ushijima };

// How the 4x4 face Gram matrix enters the Ushijima formula.
enum class UshijimaGram { UnitDiagonal, DoubledDiagonal };

template <class S>
struct VolumeResult {
    VolumeMethod method = VolumeMethod::ClosedForm;
    S volume{};
    std::complex<S> Z1{}, Z2{};
    std::complex<S> U1{}, U2{};
    S det_gram{};
    std::vector<std::complex<S>> terms;  // dilogarithm values in formula order
    S residue{};                         // disagreement between equivalent forms of the result
    int ideal_vertices = 0;              // vertices whose angle sum is exactly pi
    int cross_check_k = 0;
    S cross_check_diff{};
};

// The convention picked by calibration; see calibrate_ushijima_gram.
UshijimaGram frozen_ushijima_gram();
// Chooses the convention for which Z1 = 1 at the M_2 angle data.
UshijimaGram calibrate_ushijima_gram();

template <class S = double>
VolumeResult<S> ushijima_volume(const UshijimaInput<S>& in, UshijimaGram gram = frozen_ushijima_gram());

// Closed form for vol(M_k), cross-checked against 2k tetrahedra via Ushijima.
template <class S = double>
VolumeResult<S> volume_Mkk(int k);

struct VolumeRow {
    int k = 0;
    double closed = 0, ushijima = 0, lower = 0, upper = 0, diff = 0;
};

std::vector<VolumeRow> volume_table(const std::vector<int>& ks);
std::string volume_csv(const std::vector<VolumeRow>& rows, int precision = 12);

}  // namespace cuspmin
