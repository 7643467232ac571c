#pragma once
#include <array>

// Closed forms of the d = 3 simultaneous eigenvector, f(0,0,0) = 1.
// Variables: l1, l2 eigenvalues, q, t = q^2+q+1, r = q+1.
// value = numerator / denominator.

namespace btq::data {

struct ClosedFormEntry {
    int n1, n2;
    const char* numerator;
    const char* denominator;
    const char* reading_note;  // nonempty where the transcription had to interpret the source
};

inline constexpr std::array<ClosedFormEntry, 21> eigen_d3_closed_forms{{
    {0, 0, "1", "1", ""},
    {1, 0, "l1", "t", ""},
    {1, 1, "l2", "t", ""},
    {2, 0, "l1^2 - q*r*l2", "t", ""},
    {2, 1, "l1*l2 - q^2*t", "t*r", ""},
    {2, 2, "l2^2 - q*r*l1", "t", ""},
    {3, 0, "l1^3 - q*(r+1)*l1*l2 + q^3*t", "t", ""},
    {3, 1, "l2*l1^2 - q*r*l2^2 - q^2*l1", "r*t", ""},
    {3, 2, "l1*l2^2 - q*r*l1^2 - l2*q^2", "r*t", ""},
    {3, 3, "l2^3 - q*l1*l2*(r+1) + q^3*t", "t", ""},
    {4, 0, "l1^4 - q*l2*l1^2*(r+2) + q^2*r*l2^2 + q^3*l1*(t+1)", "t", ""},
    {4, 1, "l2*l1^3 - q*l1*l2^2*(r+1) + q^3*l2*(1+r^2) - q^2*l1^2", "r*t", ""},
    {4, 2, "l1^2*l2^2 - q*r*(l1^3+l2^3) + l1*l2*q^3*(r+2) - q^5*t", "r*t", ""},
    {4, 3, "l1*l2^3 - q*l1^2*l2*(r+1) - l2^2*q^2 + l1*q^3*(t+r)", "r*t", ""},
    {4, 4, "l2^4 - q*l1*l2^2*(r+2) + l2*q^3*(t+1) + q^2*r*l1^2", "t", ""},
    {5, 0, "l1^5 - q*l1^3*l2*(r+3) + l1*l2^2*q^2*(2*r+1) + l1^2*q^3*(t+2) - q^4*l2*(r^2+1)", "t", ""},
    {5, 1, "l2*l1^4 - q*l1^2*l2^2*(r+2) + q^3*l1*l2*(t+r+2) - q^2*l1^3 + q^2*r*l2^3 - q^5*t", "r*t", ""},
    {5, 2, "l1^3*l2^2 - q*l1*l2^3*(r+1) + q^2*l2*l1^2*(t+3*q) - q*r*l1^4 + q^3*l2^2*(r+1) - q^4*l1*(r*t+q)", "r*t", ""},
    {5, 3,
     "l1^2*l2^3 - l2*l1^3*q*(q+2) + q^2*l1*l2^2*(q^2+4*q+1) - q*r*l2^4 + q^3*l1^2*(q+2)"
     " - l2*q^4*(q^3+2*q^2+3*q+1)",
     "r*t", "printed factor q_3 read as q^3"},
    {5, 4, "l1*l2^4 - l1^2*l2^2*q*(r+2) + l1*l2*q^3*(t+r+2) - q^2*l2^3 + q^2*r*l1^3 - q^5*t", "r*t", ""},
    {5, 5, "l2^5 - q*l1*l2^3*(r+3) + q^2*l1^2*l2*(2*r+1) + l2^2*q^3*(t+2) - l1*q^4*(t+r)", "t", ""},
}};

} // namespace btq::data
