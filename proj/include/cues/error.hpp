#pragma once

#include <stdexcept>
#include <string>

namespace cues {

// Base for every error raised by the library. Each subclass names one
// failure class so callers (and the CLI) can map it to an exit path.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class IntegrationFault : public Error {
public:
    IntegrationFault(const std::string& what, double time)
        : Error(what + " (t = " + std::to_string(time) + " s)"), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class EstimatorDivergence : public Error {
public:
    using Error::Error;
};

class NumericallySingular : public Error {
public:
    using Error::Error;
};

class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class WorkspaceViolation : public Error {
public:
    WorkspaceViolation(const std::string& what, double radius)
        : Error(what), radius_(radius) {}
    double radius() const noexcept { return radius_; }

private:
    double radius_;
};

class JointLimitError : public Error {
public:
    JointLimitError(const std::string& what, int joint) : Error(what), joint_(joint) {}
    /// 1-based joint index (1 = coxa, 2 = knee, 3 = femur elevation).
    int joint() const noexcept { return joint_; }

private:
    int joint_;
};

class PhaseSequencingError : public Error {
public:
    using Error::Error;
};

class IllegalTransition : public Error {
public:
    IllegalTransition(const std::string& from, const std::string& to)
        : Error("illegal mission transition " + from + " -> " + to), from_(from), to_(to) {}
    const std::string& from() const noexcept { return from_; }
    const std::string& to() const noexcept { return to_; }

private:
    std::string from_;
    std::string to_;
};

class OutOfBounds : public Error {
public:
    using Error::Error;
};

class EmptyReport : public Error {
public:
    using Error::Error;
};

class ScenarioError : public Error {
public:
    ScenarioError(const std::string& field, const std::string& constraint)
        : Error(field + ": " + constraint), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace cues
