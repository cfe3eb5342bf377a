#pragma once

#include <stdexcept>
#include <string>

namespace erfq {

// All library failures derive from Error so callers (the CLI in particular)
// can map them to a single exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NearZeroConstantTerm : public Error {
public:
    using Error::Error;
};

class NonVanishingInner : public Error {
public:
    using Error::Error;
};

class BranchPointProximity : public Error {
public:
    using Error::Error;
};

class BracketingFailure : public Error {
public:
    using Error::Error;
};

class NotNormalized : public Error {
public:
    using Error::Error;
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class SingularRelation : public Error {
public:
    using Error::Error;
};

class RecursionBreakdown : public Error {
public:
    using Error::Error;
};

class RegimeError : public Error {
public:
    using Error::Error;
};

} // namespace erfq
