// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define RMT_DEFINE_ERROR(Name)                                        \
    struct Name : Error {                                             \
        explicit Name(const std::string& msg = #Name) : Error(msg) {} \
    }

// potential / equilibrium
RMT_DEFINE_ERROR(NonConfining);
RMT_DEFINE_ERROR(MultiCut);
RMT_DEFINE_ERROR(NoConvergence);
RMT_DEFINE_ERROR(DomainError);

// phase
RMT_DEFINE_ERROR(SearchBoundsExceeded);
RMT_DEFINE_ERROR(FlatMaximum);

// quadrature / special functions
RMT_DEFINE_ERROR(InvalidInterval);
RMT_DEFINE_ERROR(PoleTooClose);

// limit laws
RMT_DEFINE_ERROR(Divergence);
RMT_DEFINE_ERROR(SingularOperator);
RMT_DEFINE_ERROR(ConfluentAlphas);
RMT_DEFINE_ERROR(WindowTooSmall);
RMT_DEFINE_ERROR(SingularDenominator);

// transitions
RMT_DEFINE_ERROR(ZeroExponent);
RMT_DEFINE_ERROR(CaseOutOfRange);

// finite ensemble
RMT_DEFINE_ERROR(UnderflowRange);
RMT_DEFINE_ERROR(LossOfOrthogonality);
RMT_DEFINE_ERROR(QuadratureFailure);
RMT_DEFINE_ERROR(HypothesisViolated);
RMT_DEFINE_ERROR(SingularGammaMatrix);
RMT_DEFINE_ERROR(IllConditionedB);

// sampler
RMT_DEFINE_ERROR(NonConvergence);
RMT_DEFINE_ERROR(BadScale);

// cli
RMT_DEFINE_ERROR(ConfigError);

#undef RMT_DEFINE_ERROR

}  // namespace rmt
