#pragma once

#include <cstddef>

#include <boost/rational.hpp>

#include "sskh/setfam/family.hpp"

namespace sskh::setfam {

using Rational = boost::rational<long long>;

// m sets over a universe of m*k - m(m-1)t/2 elements; requires m <= floor(k/t).
SetFamily construct_small_n(std::size_t m, std::size_t k, std::size_t t);

// k/t + 1 exactly t-intersecting k-sets over k(k/t+1)/2 elements; requires t | k.
SetFamily construct_exact_t(std::size_t k, std::size_t t);

// From a k-uniform, at most t-intersecting family of m sets over n elements,
// builds m^2 sets that are 2k-uniform over 2mn elements, still at most t-intersecting.
SetFamily double_family(const SetFamily& fam, std::size_t k, std::size_t t);

// k|H|/n.
Rational relative_size(const SetFamily& fam, std::size_t k);

// Appends one fresh element to each set, padding the universe to n elements.
// Input: m < n sets, (k-1)-uniform, at most t-intersecting, universe of at most n - m labels.
SetFamily add_distinguished(const SetFamily& fam, std::size_t n, std::size_t t);

// Removes the smallest private element from each set; the result lives on the
// universe minus the removed elements. Requires a maximally cover-free family.
SetFamily strip_distinguished(const SetFamily& fam);

}  // namespace sskh::setfam
