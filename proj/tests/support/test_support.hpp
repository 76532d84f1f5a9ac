#pragma once

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tweetpol/corpus.hpp"
#include "tweetpol/random.hpp"

namespace tweetpol::testing {

inline std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(TWEETPOL_SOURCE_DIR) / relative;
}

inline Corpus make_corpus(const std::vector<std::tuple<std::string, Label, std::string>>& rows) {
  std::vector<Tweet> tweets;
  for (const auto& [id, label, text] : rows) tweets.push_back(Tweet{id, text, std::nullopt, label});
  return Corpus(std::move(tweets));
}

/// Corpus with the given class sizes; texts are unique filler.
inline Corpus corpus_with_counts(std::size_t neg, std::size_t neu, std::size_t pos) {
  std::vector<Tweet> tweets;
  const PerLabel<std::size_t> counts = {neg, neu, pos};
  for (Label label : kAllLabels) {
    for (std::size_t i = 0; i < counts[index_of(label)]; ++i) {
      const std::string id = std::string(to_string(label)) + "-" + std::to_string(i);
      tweets.push_back(Tweet{id, "text " + id, std::nullopt, label});
    }
  }
  return Corpus(std::move(tweets));
}

inline std::string random_string(Rng& rng, std::string_view alphabet, std::size_t max_len) {
  const std::size_t len = uniform_below(rng, max_len + 1);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += alphabet[uniform_below(rng, alphabet.size())];
  return s;
}

/// Undirected edge weights by a plain double loop over all occurrence pairs.
/// ASCII texts only (one byte per code point).
inline std::map<std::pair<std::string, std::string>, double> brute_force_edges(
    const std::string& text, std::size_t n, std::size_t window) {
  std::map<std::pair<std::string, std::string>, double> edges;
  if (text.size() < n) return edges;
  const std::size_t count = text.size() - n + 1;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (!(i < j && j - i <= window)) continue;
      std::string a = text.substr(i, n);
      std::string b = text.substr(j, n);
      if (b < a) std::swap(a, b);
      edges[{a, b}] += 1.0;
    }
  }
  return edges;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("tweetpol-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace tweetpol::testing
