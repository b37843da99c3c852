// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "corrdetect/graph.hpp"

namespace corrdetect {

/// Uniform integer in [0, bound). Portable across standard libraries, unlike
/// std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

Graph star(std::size_t n);  // center 0
Graph complete(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);  // sides [0,a) and [a,a+b)
Graph cycle(std::size_t n);
Graph path(std::size_t n);
Graph grid(std::size_t rows, std::size_t cols);
Graph disjoint_cliques(std::size_t count, std::size_t size);
/// Node i adjacent to i +- o (mod n) for each offset o.
Graph circulant(std::size_t n, std::span<const std::size_t> offsets);
Graph random_d_regular(std::size_t n, std::size_t d, std::uint64_t seed);
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);
/// Exactly m distinct uniformly random edges.
Graph gnm(std::size_t n, std::size_t m, std::uint64_t seed);
Graph random_digraph(std::size_t n, double p, std::uint64_t seed);
/// d-regular graph made of `parts` blocks of `size` nodes: each block is a
/// (d-2)-regular circulant, and node j of block i is matched to node j of
/// blocks i-1 and i+1 (a ring of blocks). Block i is [i*size, (i+1)*size).
Graph planted_regular(std::size_t parts, std::size_t size, std::size_t d);

/// Dispatch by name: star, complete, complete_bipartite, cycle, path, grid,
/// random_d_regular, disjoint_cliques, circulant, erdos_renyi, gnm,
/// random_digraph, planted_regular. Throws UsageError on bad parameters.
Graph generate(std::string_view kind, std::span<const double> params, std::uint64_t seed);

}  // namespace corrdetect
