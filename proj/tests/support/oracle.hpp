#pragma once

// Straight-line reference implementations used to check the library. They
// share no code with it: vectors are re-read from the fixture text and every
// quantity is recomputed from scratch.

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace oracle {

std::string fixture(const std::string& name);

using Vectors = std::map<std::string, std::vector<double>>;

// "count dim" header optional; first occurrence wins; tokens lowercased.
Vectors read_vectors(const std::string& path);

double cosine_distance(const std::vector<double>& a, const std::vector<double>& b);

struct Scored {
  std::string word;
  double total;
};

// Every candidate scored, screened, sorted, truncated; nothing clever.
std::vector<Scored> brute_force_rank(const Vectors& vectors,
                                     const std::unordered_map<std::string, std::string>& pos,
                                     const std::string& target, const std::string& source,
                                     const std::string& wanted_pos, std::size_t k, double beta);

double mean_distance(const Vectors& vectors, const std::vector<std::string>& lemmas,
                     const std::string& source, const std::vector<std::string>& stopwords);

// Random unit-free vectors for `n` tokens "w0".."w{n-1}" with a POS column.
struct SyntheticWorld {
  Vectors vectors;
  std::unordered_map<std::string, std::string> pos;
};
SyntheticWorld synthetic_world(std::size_t n, std::size_t dim, std::uint64_t seed);

}  // namespace oracle
