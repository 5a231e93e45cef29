#include "figura/embedding_store.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>

#include "figura/error.hpp"

namespace figura {
namespace {

bool has_gzip_magic(std::istream& in) {
  const int first = in.peek();
  if (first != 0x1f) return false;
  in.get();
  const bool second = in.peek() == 0x8b;
  in.unget();
  return second;
}

std::string inflate_gzip(std::string_view compressed) {
  z_stream stream{};
  if (inflateInit2(&stream, 16 + MAX_WBITS) != Z_OK) {
    throw LoadError("cannot initialise gzip decoder");
  }
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  stream.avail_in = static_cast<uInt>(compressed.size());

  std::string out;
  char buffer[1 << 15];
  int status = Z_OK;
  while (status != Z_STREAM_END) {
    stream.next_out = reinterpret_cast<Bytef*>(buffer);
    stream.avail_out = sizeof(buffer);
    status = inflate(&stream, Z_NO_FLUSH);
    if (status != Z_OK && status != Z_STREAM_END) {
      inflateEnd(&stream);
      throw LoadError("corrupt gzip embedding stream");
    }
    out.append(buffer, sizeof(buffer) - stream.avail_out);
    if (status == Z_OK && stream.avail_in == 0 && stream.avail_out != 0) {
      inflateEnd(&stream);
      throw LoadError("truncated gzip embedding stream");
    }
  }
  inflateEnd(&stream);
  return out;
}

}  // namespace

std::string EmbeddingStore::normalize(std::string_view token) const {
  return lowercase_ ? to_lower(token) : std::string(token);
}

bool EmbeddingStore::add_row(std::string token, std::vector<double>&& values) {
  if (index_.contains(token)) return false;
  double sq = 0.0;
  for (double v : values) sq += v * v;
  index_.emplace(token, tokens_.size());
  tokens_.push_back(std::move(token));
  norms_.push_back(std::sqrt(sq));
  data_.insert(data_.end(), values.begin(), values.end());
  return true;
}

EmbeddingStore EmbeddingStore::load(std::istream& in, const EmbeddingLoadOptions& options) {
  if (has_gzip_magic(in)) {
    std::string compressed{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::istringstream plain(inflate_gzip(compressed));
    return load(plain, options);
  }

  EmbeddingStore store;
  store.lowercase_ = options.lowercase;
  std::optional<std::size_t> header_dim;
  bool first_content_line = true;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;

    if (first_content_line) {
      first_content_line = false;
      if (fields.size() == 2) {
        const auto count = parse_integer(fields[0]);
        const auto dim = parse_integer(fields[1]);
        if (count && dim && *count >= 0 && *dim > 0) {
          header_dim = static_cast<std::size_t>(*dim);
          continue;
        }
      }
    }

    const std::size_t found = fields.size() - 1;
    const std::size_t expected = store.dim_ != 0 ? store.dim_ : header_dim.value_or(found);
    if (found == 0 || found != expected) {
      throw LoadError(fmt::format("dimension mismatch at line {}: expected {} values, found {}",
                                  line_no, expected, found));
    }

    values.clear();
    values.reserve(found);
    double sq = 0.0;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto v = parse_double(fields[i]);
      if (!v || !std::isfinite(*v)) {
        throw LoadError(fmt::format("invalid number '{}' at line {}", fields[i], line_no));
      }
      values.push_back(*v);
      sq += *v * *v;
    }
    if (sq == 0.0) {
      throw LoadError(fmt::format("zero vector for token '{}' at line {}", fields[0], line_no));
    }
    store.dim_ = found;
    store.add_row(store.normalize(fields[0]), std::move(values));
    values = {};
  }

  if (store.tokens_.empty()) throw LoadError("empty embedding stream");
  return store;
}

EmbeddingStore EmbeddingStore::load_file(const std::filesystem::path& path,
                                         const EmbeddingLoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open embedding file " + path.string());
  return load(in, options);
}

EmbeddingStore EmbeddingStore::from_vectors(
    std::span<const std::pair<std::string, std::vector<double>>> rows,
    const EmbeddingLoadOptions& options) {
  EmbeddingStore store;
  store.lowercase_ = options.lowercase;
  std::size_t row_no = 0;
  for (const auto& [token, values] : rows) {
    ++row_no;
    if (values.empty() || (store.dim_ != 0 && values.size() != store.dim_)) {
      throw LoadError(fmt::format("dimension mismatch at line {}", row_no));
    }
    if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) {
      throw LoadError(fmt::format("zero vector for token '{}' at line {}", token, row_no));
    }
    store.dim_ = values.size();
    store.add_row(store.normalize(token), std::vector<double>(values));
  }
  if (store.tokens_.empty()) throw LoadError("empty embedding stream");
  return store;
}

bool EmbeddingStore::contains(std::string_view token) const {
  return index_.contains(normalize(token));
}

std::optional<std::size_t> EmbeddingStore::find(std::string_view token) const {
  const auto it = index_.find(normalize(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t EmbeddingStore::index_of(std::string_view token) const {
  if (auto index = find(token)) return *index;
  throw LookupError(fmt::format("unknown token '{}'", token));
}

std::span<const double> EmbeddingStore::vector(std::size_t index) const {
  return {data_.data() + index * dim_, dim_};
}

std::span<const double> EmbeddingStore::vector(std::string_view token) const {
  return vector(index_of(token));
}

double EmbeddingStore::distance(std::size_t a, std::size_t b) const {
  const double* x = data_.data() + a * dim_;
  const double* y = data_.data() + b * dim_;
  double dot = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) dot += x[i] * y[i];
  const double d = 1.0 - dot / (norms_[a] * norms_[b]);
  return std::clamp(d, 0.0, 2.0);
}

double EmbeddingStore::distance(std::string_view a, std::string_view b) const {
  return distance(index_of(a), index_of(b));
}

std::vector<Neighbor> EmbeddingStore::nearest_neighbors(std::string_view word, std::size_t k,
                                                        const TokenSet* filter) const {
  const std::size_t query = index_of(word);
  if (k == 0) return {};

  TokenSet normalized_filter;
  if (filter != nullptr && lowercase_) {
    for (const auto& t : *filter) normalized_filter.insert(to_lower(t));
    filter = &normalized_filter;
  }

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(filter != nullptr ? filter->size() : tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i == query) continue;
    if (filter != nullptr && !filter->contains(tokens_[i])) continue;
    scored.emplace_back(distance(query, i), i);
  }

  const auto by_distance_then_token = [this](const auto& l, const auto& r) {
    if (l.first != r.first) return l.first < r.first;
    return tokens_[l.second] < tokens_[r.second];
  };
  const std::size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), by_distance_then_token);

  std::vector<Neighbor> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back({tokens_[scored[i].second], scored[i].first});
  }
  return out;
}

}  // namespace figura
