#ifndef QAW_ERRORS_HPP
#define QAW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qaw {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input validation failed (parameter domain, config parsing, spec invariants).
struct InvalidParameters : Error {
    using Error::Error;
};

// An infinite product or adaptive scheme did not reach its tolerance.
struct NonConvergent : Error {
    using Error::Error;
};

// Alias used by the quadrature layer.
struct NoConvergence : NonConvergent {
    using NonConvergent::NonConvergent;
};

// A (c;q)_k partial product underflowed the safe-division guard.
struct DenominatorVanished : Error {
    using Error::Error;
};

// q^s = 0 cannot sit on the lattice.
struct ZeroArgument : Error {
    using Error::Error;
};

// |x| > 1 where the orthogonality interval is required.
struct OutOfInterval : Error {
    using Error::Error;
};

// A lattice difference denominator vanished (q^s at +-1 or +-q^{+-1/2}).
struct DegenerateLatticePoint : Error {
    using Error::Error;
};

// A closed-form denominator vanished (pair products at q^{-m} and the like).
struct SingularDenominator : Error {
    using Error::Error;
};

// Quotient-form kernels refuse nearly equal arguments.
struct ConfluentPoints : Error {
    using Error::Error;
};

// The 2x2 boundary system is singular (possible only for signed masses).
struct SingularKappa : Error {
    using Error::Error;
};

// q^{kappa(s)} collides with a q^j and the basic-series form degenerates.
struct DegenerateKappaS : Error {
    using Error::Error;
};

// The moment-matrix solve lost too much accuracy.
struct IllConditioned : Error {
    using Error::Error;
};

} // namespace qaw

#endif
