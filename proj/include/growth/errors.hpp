#ifndef GROWTH_ERRORS_HPP
#define GROWTH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace growth {

enum class Errc {
    nondeterministic_transition,
    nonpositive_weight,
    dangling_state_reference,
    empty_language,
    no_cycle,
    not_comparable,
    insufficient_data,
    finite_index_subgroup,
    injectivity_violation,
    determinism_clash,
    loop_at_basepoint,
    disconnected,
    attempt_cap_exceeded,
    malformed_input,
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::nondeterministic_transition: return "NondeterministicTransition";
        case Errc::nonpositive_weight: return "NonpositiveWeight";
        case Errc::dangling_state_reference: return "DanglingStateReference";
        case Errc::empty_language: return "EmptyLanguage";
        case Errc::no_cycle: return "NoCycle";
        case Errc::not_comparable: return "NotComparable";
        case Errc::insufficient_data: return "InsufficientData";
        case Errc::finite_index_subgroup: return "FiniteIndexSubgroup";
        case Errc::injectivity_violation: return "InjectivityViolation";
        case Errc::determinism_clash: return "DeterminismClash";
        case Errc::loop_at_basepoint: return "LoopAtBasepoint";
        case Errc::disconnected: return "Disconnected";
        case Errc::attempt_cap_exceeded: return "AttemptCapExceeded";
        case Errc::malformed_input: return "MalformedInput";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace growth

#endif  // GROWTH_ERRORS_HPP
