#ifndef ESER_GENERATORS_HPP
#define ESER_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "eser/model.hpp"

namespace eser {

/// n queens: one variable per row, alldifferent on columns and neq offsets
/// for both diagonals.
Model gen_queens(int n);

/// `pigeons` variables over `holes` values under alldifferent, plus `padding`
/// 0/1 variables declared interleaved with the pigeons and linked only to
/// each other by non-pruning constraints.
Model gen_pigeonhole(int pigeons, int holes, int padding);

/// Graph colouring with `k` colours from DIMACS edge format
/// (`p edge N M` / `e U V`, 1-based vertices).
Model gen_coloring(std::string_view dimacs, int k);

/// Model B random binary CSP: `n` variables over 0..d-1, ceil(p1*n(n-1)/2)
/// distinct constrained pairs, each forbidding ceil(p2*d*d) distinct tuples.
Model gen_randcsp(int n, int d, double p1, double p2, std::uint64_t seed);

/// Default seed: the ESER_SEED environment variable if set, else 1.
std::uint64_t default_seed();

/// Builds a model from a spec string: `queens:N`, `pigeon:P,H,K`,
/// `randcsp:N,D,P1,P2[,SEED]`, `color:FILE,K`. Throws std::invalid_argument.
Model generate(std::string_view spec);

}  // namespace eser

#endif  // ESER_GENERATORS_HPP
