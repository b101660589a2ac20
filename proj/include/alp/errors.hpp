#pragma once
#include <stdexcept>
#include <string>

namespace alp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ALP_ERROR(Name)                                        \
    struct Name : Error {                                      \
        explicit Name(const std::string& what = #Name)         \
            : Error(std::string(#Name) + ": " + what) {}       \
    }

ALP_ERROR(DimensionMismatch);
ALP_ERROR(CornerMismatch);
ALP_ERROR(QuadratureUnderResolved);
ALP_ERROR(DenseCapExceeded);
ALP_ERROR(UnsupportedCombination);
ALP_ERROR(UnsupportedHartleyIndex);
ALP_ERROR(NotAOneSpace);
ALP_ERROR(DiagonalRequested);
ALP_ERROR(UncomputablePosition);
ALP_ERROR(DegenerateDenominator);
ALP_ERROR(StructureViolation);
ALP_ERROR(OracleUnsupported);
ALP_ERROR(PoleAtPhi);
ALP_ERROR(DuplicateRoots);
ALP_ERROR(DegreeViolation);
ALP_ERROR(IllConditionedChi);
ALP_ERROR(FitFailed);
ALP_ERROR(SingularDiagonal);
ALP_ERROR(SingularCapacitance);
ALP_ERROR(NonHermitianInput);
ALP_ERROR(RankBudgetExhausted);
ALP_ERROR(NotConverged);
ALP_ERROR(ConfigError);

#undef ALP_ERROR

}  // namespace alp
