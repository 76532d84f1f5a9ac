#include "tweetpol/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "tweetpol/errors.hpp"
#include "tweetpol/random.hpp"

namespace tweetpol {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || c == '_';
}

// Length of the UTF-8 sequence starting at text[i]. A malformed or truncated
// sequence counts as a single byte so it cannot swallow its neighbours.
std::size_t sequence_length(std::string_view text, std::size_t i) {
  const auto c = static_cast<unsigned char>(text[i]);
  std::size_t len = 1;
  if ((c >> 5) == 0x6) {
    len = 2;
  } else if ((c >> 4) == 0xE) {
    len = 3;
  } else if ((c >> 3) == 0x1E) {
    len = 4;
  }
  if (i + len > text.size()) return 1;
  for (std::size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(text[i + k]) >> 6) != 0x2) return 1;
  }
  return len;
}

std::vector<std::string_view> split_sequences(std::string_view text) {
  std::vector<std::string_view> out;
  for (std::size_t i = 0; i < text.size();) {
    const std::size_t len = sequence_length(text, i);
    out.push_back(text.substr(i, len));
    i += len;
  }
  return out;
}

std::string strip_characters(std::string_view text, std::string_view strip_set) {
  if (strip_set.empty()) return std::string(text);
  const auto stripped = split_sequences(strip_set);
  std::string out;
  out.reserve(text.size());
  for (std::string_view seq : split_sequences(text)) {
    if (std::find(stripped.begin(), stripped.end(), seq) == stripped.end()) out += seq;
  }
  return out;
}

std::string lowercase_ascii(std::string_view token) {
  std::string out(token);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Position of the first http:// or https:// in an already-lowercased token.
std::size_t find_url(std::string_view token) {
  const std::size_t http = token.find("http://");
  const std::size_t https = token.find("https://");
  return std::min(http, https);
}

bool is_mention(std::string_view token) {
  return token.size() >= 2 && token[0] == '@' && is_word_char(token[1]);
}

void append_token(std::string& out, std::string_view token) {
  if (token.empty()) return;
  if (!out.empty()) out += ' ';
  out += token;
}

}  // namespace

std::size_t code_point_count(std::string_view utf8) noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < utf8.size(); ++count) {
    i += sequence_length(utf8, i);
  }
  return count;
}

std::vector<std::size_t> code_point_offsets(std::string_view utf8) {
  std::vector<std::size_t> offsets;
  offsets.reserve(utf8.size() + 1);
  for (std::size_t i = 0; i < utf8.size();) {
    offsets.push_back(i);
    i += sequence_length(utf8, i);
  }
  offsets.push_back(utf8.size());
  return offsets;
}

std::string normalize(std::string_view raw_text, std::string_view strip_set) {
  const std::string stripped = strip_characters(raw_text, strip_set);
  std::string out;
  out.reserve(stripped.size());

  std::size_t pos = 0;
  while (pos < stripped.size()) {
    while (pos < stripped.size() && is_space(stripped[pos])) ++pos;
    std::size_t end = pos;
    while (end < stripped.size() && !is_space(stripped[end])) ++end;
    if (end == pos) break;
    const std::string_view raw_token(stripped.data() + pos, end - pos);
    pos = end;

    // Placeholders from an earlier pass survive unchanged.
    if (raw_token == "URL" || raw_token == "REF") {
      append_token(out, raw_token);
      continue;
    }
    const std::string token = lowercase_ascii(raw_token);
    const std::size_t url_at = find_url(token);
    const std::string_view head =
        std::string_view(token).substr(0, std::min(url_at, token.size()));
    append_token(out, is_mention(head) ? std::string_view("REF") : head);
    if (url_at != std::string::npos) append_token(out, "URL");
  }
  return out;
}

Corpus::Corpus(std::vector<Tweet> tweets) : tweets_(std::move(tweets)) {
  std::unordered_set<std::string_view> ids;
  ids.reserve(tweets_.size());
  for (const Tweet& t : tweets_) {
    if (!ids.insert(t.id).second) throw ArgumentError("duplicate tweet id '" + t.id + "'");
    ++counts_[index_of(t.label)];
  }
}

Corpus Corpus::select(std::span<const std::size_t> indices) const {
  std::vector<Tweet> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) picked.push_back(tweets_.at(i));
  return Corpus(std::move(picked));
}

Corpus Corpus::normalized(std::string_view strip_set) const {
  std::vector<Tweet> copy = tweets_;
  for (Tweet& t : copy) t.normalized_text = normalize(t.raw_text, strip_set);
  return Corpus(std::move(copy));
}

Corpus read_corpus(std::istream& in) {
  std::vector<Tweet> tweets;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const std::size_t tab1 = line.find('\t');
    const std::size_t tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos || line.find('\t', tab2 + 1) != std::string::npos) {
      throw ParseError(line_no, "expected 3 tab-separated fields (id, label, text)");
    }
    Tweet t;
    t.id = line.substr(0, tab1);
    const std::string label_text = line.substr(tab1 + 1, tab2 - tab1 - 1);
    t.raw_text = line.substr(tab2 + 1);

    if (t.id.empty()) throw ParseError(line_no, "empty id");
    const auto label = parse_label(label_text);
    if (!label) throw ParseError(line_no, "unknown label '" + label_text + "'");
    t.label = *label;
    if (t.raw_text.empty()) throw ParseError(line_no, "empty text");
    if (code_point_count(t.raw_text) > kMaxTweetCodePoints) {
      throw ParseError(line_no, "text exceeds " + std::to_string(kMaxTweetCodePoints) +
                                    " code points");
    }
    if (!ids.insert(t.id).second) throw ParseError(line_no, "duplicate id '" + t.id + "'");
    tweets.push_back(std::move(t));
  }
  return Corpus(std::move(tweets));
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path.string());
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const Corpus& corpus, bool use_normalized) {
  for (const Tweet& t : corpus.tweets()) {
    out << t.id << '\t' << to_string(t.label) << '\t'
        << (use_normalized ? t.text() : t.raw_text) << '\n';
  }
}

Corpus balance(const Corpus& corpus, std::uint64_t seed) {
  PerLabel<std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    by_class[index_of(corpus[i].label)].push_back(i);
  }
  std::size_t smallest = corpus.size();
  for (Label label : kAllLabels) {
    const auto& members = by_class[index_of(label)];
    if (members.empty()) {
      throw ArgumentError("balance: class '" + std::string(to_string(label)) + "' is empty");
    }
    smallest = std::min(smallest, members.size());
  }

  Rng rng(seed);
  std::vector<std::size_t> keep;
  keep.reserve(smallest * kNumLabels);
  for (auto& members : by_class) {
    shuffle(std::span(members), rng);
    keep.insert(keep.end(), members.begin(), members.begin() + static_cast<long>(smallest));
  }
  std::sort(keep.begin(), keep.end());
  return corpus.select(keep);
}

std::vector<std::vector<std::size_t>> stratified_folds(const Corpus& corpus, std::size_t k,
                                                       std::uint64_t seed) {
  // Folds may outnumber a class's tweets: such a class leaves some folds
  // without members, which still keeps every class within one per fold.
  if (k < 2 || k > corpus.size()) {
    throw ArgumentError("stratified_folds: k=" + std::to_string(k) + " must lie in [2, " +
                        std::to_string(corpus.size()) + "]");
  }

  PerLabel<std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    by_class[index_of(corpus[i].label)].push_back(i);
  }
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  // Round-robin dealing continues across classes so fold sizes also stay
  // within one of each other.
  std::size_t cursor = 0;
  for (auto& members : by_class) {
    shuffle(std::span(members), rng);
    for (std::size_t idx : members) folds[cursor++ % k].push_back(idx);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

}  // namespace tweetpol
