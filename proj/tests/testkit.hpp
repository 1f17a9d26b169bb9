#pragma once

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

// Always-on checks: never compiled out in Release.
#define REQUIRE(cond, msg)                                                       \
    do {                                                                         \
        if (!(cond)) {                                                           \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg  \
                      << "\n";                                                   \
            std::exit(1);                                                        \
        }                                                                        \
    } while (0)

#define REQUIRE_NEAR(a, b, tol, msg)                                             \
    do {                                                                         \
        const double a_ = (a), b_ = (b), tol_ = (tol);                           \
        if (!(std::abs(a_ - b_) <= tol_)) {                                      \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg  \
                      << ": |" << a_ << " - " << b_ << "| = " << std::abs(a_ - b_) \
                      << " > " << tol_ << "\n";                                  \
            std::exit(1);                                                        \
        }                                                                        \
    } while (0)

#define REQUIRE_REL(a, b, tol, msg)                                              \
    do {                                                                         \
        const double a_ = (a), b_ = (b), tol_ = (tol);                           \
        const double scale_ = std::max({1e-300, std::abs(a_), std::abs(b_)});    \
        if (!(std::abs(a_ - b_) <= tol_ * scale_)) {                             \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg  \
                      << ": " << a_ << " vs " << b_ << " (rel "                  \
                      << std::abs(a_ - b_) / scale_ << " > " << tol_ << ")\n";   \
            std::exit(1);                                                        \
        }                                                                        \
    } while (0)

#define REQUIRE_THROWS(expr, Exc, msg)                                           \
    do {                                                                         \
        bool caught_ = false;                                                    \
        try {                                                                    \
            (void)(expr);                                                        \
        } catch (const Exc&) {                                                   \
            caught_ = true;                                                      \
        }                                                                        \
        if (!caught_) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg  \
                      << ": expected " #Exc "\n";                                \
            std::exit(1);                                                        \
        }                                                                        \
    } while (0)

inline void pass(const std::string& name) { std::cout << "[PASS] " << name << "\n"; }
