#pragma once

#include <stdexcept>
#include <string>

namespace rrlie {

/// Bad user input: unknown form label, malformed data file, unsupported rank.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument outside an operation's domain (root not in the layer, odd Pfaffian size, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A structural invariant failed. Signals a bug or an input the construction does not cover.
class structural_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A numerical result did not stabilise under grid refinement or truncation.
class refinement_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rrlie
