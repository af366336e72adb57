#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "agsp/eig.hpp"
#include "agsp/matfunc.hpp"
#include "agsp/matrix.hpp"
#include "agsp/rotations.hpp"

namespace agsp {

/// Spectrum of a symmetric GSO: Z = U diag(lambda) U^T with the analysis
/// matrix F = U^T (real orthogonal here).
struct GraphSpectrum {
    RealMatrix gso;
    SymEig eig;
    RealMatrix gft;  // F = U^T
    std::size_t n() const { return gso.rows(); }
};

inline GraphSpectrum build_spectrum(const RealMatrix& gso_matrix, double symtol = tol::symmetry) {
    GraphSpectrum s;
    s.gso = gso_matrix;
    s.eig = sym_eig(gso_matrix, symtol);
    s.gft = transpose(s.eig.eigenvectors);
    return s;
}

enum class TransformKind { gft, gfrft, agft, agfrft_i, agfrft_ii };

inline const char* kind_name(TransformKind k) {
    switch (k) {
        case TransformKind::gft: return "gft";
        case TransformKind::gfrft: return "gfrft";
        case TransformKind::agft: return "agft";
        case TransformKind::agfrft_i: return "agfrft-i";
        default: return "agfrft-ii";
    }
}

struct TransformParams {
    double theta = 0.0;
    double alpha = 1.0;
    double kappa = 1.0;
    AxisKind axis = AxisKind::yaw;
    RotationFamily family = RotationFamily::degeneracy_friendly;
};

/// A materialized unitary transform with its exact inverse (the adjoint).
struct TransformOperator {
    TransformKind kind = TransformKind::gft;
    ComplexMatrix forward;
    ComplexMatrix inverse;
    TransformParams params;
    std::size_t n() const { return forward.rows(); }
};

namespace detail {

// Multiplying by an exact identity is skipped so that theta = 0 operators are
// bit-identical to their rotation-free counterparts.
inline bool is_exact_identity(const RealMatrix& r) {
    if (!r.square()) return false;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            if (r(i, j) != (i == j ? 1.0 : 0.0)) return false;
    return true;
}

}  // namespace detail

inline TransformOperator gft_operator(const GraphSpectrum& spec) {
    TransformOperator op;
    op.kind = TransformKind::gft;
    op.forward = to_complex(spec.gft);
    op.inverse = to_complex(transpose(spec.gft));
    return op;
}

inline TransformOperator gfrft_operator(const GraphSpectrum& spec, double alpha) {
    const UnitaryEig e = unitary_eig(spec.gft);
    TransformOperator op;
    op.kind = TransformKind::gfrft;
    op.params.alpha = alpha;
    op.forward = e.power(alpha);
    op.inverse = e.power(-alpha);
    return op;
}

inline TransformOperator agft_operator(const GraphSpectrum& spec, const RotationSpec& rot) {
    const RealMatrix r = rotation_matrix(rot, spec.n());
    TransformOperator op;
    op.kind = TransformKind::agft;
    op.params = {rot.theta, 1.0, rot.kappa, rot.axis, rot.family};
    const RealMatrix f_theta = detail::is_exact_identity(r) ? spec.gft : spec.gft * transpose(r);
    op.forward = to_complex(f_theta);
    op.inverse = to_complex(transpose(f_theta));
    return op;
}

inline TransformOperator agfrft_i_operator(const GraphSpectrum& spec, const RotationSpec& rot,
                                           double alpha) {
    const RealMatrix r = rotation_matrix(rot, spec.n());
    const RealMatrix f_theta = detail::is_exact_identity(r) ? spec.gft : spec.gft * transpose(r);
    const UnitaryEig e = unitary_eig(f_theta);
    TransformOperator op;
    op.kind = TransformKind::agfrft_i;
    op.params = {rot.theta, alpha, rot.kappa, rot.axis, rot.family};
    op.forward = e.power(alpha);
    op.inverse = e.power(-alpha);
    return op;
}

inline TransformOperator agfrft_ii_operator(const GraphSpectrum& spec, const RotationSpec& rot,
                                            double alpha) {
    const RealMatrix r = rotation_matrix(rot, spec.n());
    const UnitaryEig e = unitary_eig(spec.gft);
    TransformOperator op;
    op.kind = TransformKind::agfrft_ii;
    op.params = {rot.theta, alpha, rot.kappa, rot.axis, rot.family};
    const ComplexMatrix falpha = e.power(alpha);
    const ComplexMatrix fneg = e.power(-alpha);
    if (detail::is_exact_identity(r)) {
        op.forward = falpha;
        op.inverse = fneg;
    } else {
        // forward = F^alpha R^T; the exact two-sided inverse is R F^{-alpha},
        // not F^{-alpha} R^T (those differ unless R commutes with F^alpha).
        op.forward = falpha * transpose(r);
        op.inverse = r * fneg;
    }
    return op;
}

inline ComplexVec apply(const TransformOperator& op, const RealVec& x) {
    if (x.size() != op.n()) throw dimension_error("apply: signal length mismatch");
    return matvec(op.forward, x);
}

inline ComplexVec apply(const TransformOperator& op, const ComplexVec& x) {
    if (x.size() != op.n()) throw dimension_error("apply: signal length mismatch");
    return matvec(op.forward, x);
}

inline ComplexVec apply_inverse(const TransformOperator& op, const ComplexVec& x) {
    if (x.size() != op.n()) throw dimension_error("apply_inverse: signal length mismatch");
    return matvec(op.inverse, x);
}

/// Memoizing operator factory for one spectrum. Operators are cached by exact
/// (kind, axis, family, theta, alpha, kappa) equality; the eigendecompositions
/// of F and of each rotated F_theta are shared across alpha values. Thread-safe.
class OperatorCache {
  public:
    explicit OperatorCache(std::shared_ptr<const GraphSpectrum> spec) : spec_(std::move(spec)) {
        gso_hash_ = matrix_hash(spec_->gso);
    }
    explicit OperatorCache(const GraphSpectrum& spec)
        : OperatorCache(std::make_shared<GraphSpectrum>(spec)) {}

    const GraphSpectrum& spectrum() const { return *spec_; }
    std::uint64_t gso_hash() const { return gso_hash_; }

    std::shared_ptr<const TransformOperator> get(TransformKind kind, const RotationSpec& rot,
                                                 double alpha) {
        const Key key{kind, rot.axis, rot.family, effective_theta(kind, rot.theta),
                      effective_alpha(kind, alpha), rot.kappa};
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = ops_.find(key);
            if (it != ops_.end()) return it->second;
        }
        auto op = std::make_shared<TransformOperator>(build(kind, rot, alpha));
        std::lock_guard<std::mutex> lock(mu_);
        return ops_.emplace(key, std::move(op)).first->second;
    }

  private:
    using Key = std::tuple<TransformKind, AxisKind, RotationFamily, double, double, double>;

    static double effective_theta(TransformKind kind, double theta) {
        return (kind == TransformKind::gft || kind == TransformKind::gfrft) ? 0.0 : theta;
    }
    static double effective_alpha(TransformKind kind, double alpha) {
        return (kind == TransformKind::gft || kind == TransformKind::agft) ? 1.0 : alpha;
    }

    TransformOperator build(TransformKind kind, const RotationSpec& rot, double alpha) {
        switch (kind) {
            case TransformKind::gft: return gft_operator(*spec_);
            case TransformKind::gfrft: return build_gfrft(alpha);
            case TransformKind::agft: return agft_operator(*spec_, rot);
            case TransformKind::agfrft_i: return build_agfrft_i(rot, alpha);
            default: return build_agfrft_ii(rot, alpha);
        }
    }

    const UnitaryEig& f_eig() {
        std::lock_guard<std::mutex> lock(eig_mu_);
        if (!f_eig_) f_eig_ = std::make_unique<UnitaryEig>(unitary_eig(spec_->gft));
        return *f_eig_;
    }

    const RealMatrix& rotation(const RotationSpec& rot) {
        const RotKey key{rot.axis, rot.family, rot.theta, rot.kappa};
        std::lock_guard<std::mutex> lock(eig_mu_);
        auto it = rotations_.find(key);
        if (it != rotations_.end()) return *it->second;
        auto r = std::make_unique<RealMatrix>(rotation_matrix(rot, spec_->n()));
        return *rotations_.emplace(key, std::move(r)).first->second;
    }

    const UnitaryEig& f_theta_eig(const RotationSpec& rot) {
        const RealMatrix& r = rotation(rot);
        const RotKey key{rot.axis, rot.family, rot.theta, rot.kappa};
        std::lock_guard<std::mutex> lock(eig_mu_);
        auto it = ftheta_eigs_.find(key);
        if (it != ftheta_eigs_.end()) return *it->second;
        const RealMatrix f_theta =
            detail::is_exact_identity(r) ? spec_->gft : spec_->gft * transpose(r);
        auto e = std::make_unique<UnitaryEig>(unitary_eig(f_theta));
        return *ftheta_eigs_.emplace(key, std::move(e)).first->second;
    }

    TransformOperator build_gfrft(double alpha) {
        const UnitaryEig& e = f_eig();
        TransformOperator op;
        op.kind = TransformKind::gfrft;
        op.params.alpha = alpha;
        op.forward = e.power(alpha);
        op.inverse = e.power(-alpha);
        return op;
    }

    TransformOperator build_agfrft_i(const RotationSpec& rot, double alpha) {
        const UnitaryEig& e = f_theta_eig(rot);
        TransformOperator op;
        op.kind = TransformKind::agfrft_i;
        op.params = {rot.theta, alpha, rot.kappa, rot.axis, rot.family};
        op.forward = e.power(alpha);
        op.inverse = e.power(-alpha);
        return op;
    }

    TransformOperator build_agfrft_ii(const RotationSpec& rot, double alpha) {
        const UnitaryEig& e = f_eig();
        TransformOperator op;
        op.kind = TransformKind::agfrft_ii;
        op.params = {rot.theta, alpha, rot.kappa, rot.axis, rot.family};
        const RealMatrix& r = rotation(rot);
        const ComplexMatrix falpha = e.power(alpha);
        const ComplexMatrix fneg = e.power(-alpha);
        if (detail::is_exact_identity(r)) {
            op.forward = falpha;
            op.inverse = fneg;
        } else {
            op.forward = falpha * transpose(r);
            op.inverse = r * fneg;
        }
        return op;
    }

    std::shared_ptr<const GraphSpectrum> spec_;
    std::uint64_t gso_hash_ = 0;
    std::mutex mu_;
    std::map<Key, std::shared_ptr<const TransformOperator>> ops_;

    struct RotKey {
        AxisKind axis;
        RotationFamily family;
        double theta;
        double kappa;
        bool operator<(const RotKey& o) const {
            return std::tie(axis, family, theta, kappa) < std::tie(o.axis, o.family, o.theta, o.kappa);
        }
    };
    std::mutex eig_mu_;
    std::unique_ptr<UnitaryEig> f_eig_;
    std::map<RotKey, std::unique_ptr<RealMatrix>> rotations_;
    std::map<RotKey, std::unique_ptr<UnitaryEig>> ftheta_eigs_;
};

}  // namespace agsp
