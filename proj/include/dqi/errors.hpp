#pragma once

#include <stdexcept>
#include <string>

namespace dqi {

// Base of everything thrown by this library. The three direct subfamilies map
// onto CLI exit codes: ContractError -> 2, BudgetExceeded -> 3, IoError -> 4.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Caller violated a documented precondition, or a result violated a
// postcondition that is always checked (even in release builds).
class ContractError : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

#define DQI_CONTRACT_ERROR(NAME)                       \
    class NAME : public ContractError {                \
    public:                                            \
        using ContractError::ContractError;            \
    }

DQI_CONTRACT_ERROR(NotPrime);
DQI_CONTRACT_ERROR(DivisionByZero);
DQI_CONTRACT_ERROR(LengthMismatch);
DQI_CONTRACT_ERROR(OrderNotPrime);
DQI_CONTRACT_ERROR(FieldMismatch);
DQI_CONTRACT_ERROR(ZeroPolynomial);
DQI_CONTRACT_ERROR(ZeroDivisor);
DQI_CONTRACT_ERROR(DegreeContract);
DQI_CONTRACT_ERROR(WeightContractViolated);
DQI_CONTRACT_ERROR(DegenerateSet);
DQI_CONTRACT_ERROR(NotBalanced);
DQI_CONTRACT_ERROR(ShapeMismatch);
DQI_CONTRACT_ERROR(SyndromeCollision);
DQI_CONTRACT_ERROR(NormViolation);
DQI_CONTRACT_ERROR(DomainError);
DQI_CONTRACT_ERROR(InvalidProfile);
DQI_CONTRACT_ERROR(DuplicateNode);
DQI_CONTRACT_ERROR(RegimeViolation);

#undef DQI_CONTRACT_ERROR

} // namespace dqi
