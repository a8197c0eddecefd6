#pragma once

// Outcome of a named verification: pass/fail plus the counterexamples that were found.

#include <string>
#include <utility>
#include <vector>

namespace rrlie {

struct CheckReport {
    std::string name;
    bool passed = true;
    std::vector<std::string> failures;

    CheckReport() = default;
    explicit CheckReport(std::string n) : name(std::move(n)) {}

    void fail(std::string what)
    {
        passed = false;
        // Counterexample lists can get long on a broken input; the first few are enough.
        if (failures.size() < 16)
            failures.push_back(std::move(what));
    }

    void merge(const CheckReport& other)
    {
        if (!other.passed) {
            passed = false;
            for (const auto& f : other.failures)
                if (failures.size() < 16)
                    failures.push_back(other.name + ": " + f);
        }
    }
};

} // namespace rrlie
