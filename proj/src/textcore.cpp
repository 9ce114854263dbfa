#include "kpbench/textcore.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stopwords_data.hpp"

namespace kpbench {
namespace {

// Decodes one UTF-8 code point starting at i; advances i past it. Invalid
// sequences yield 0xFFFD and advance one byte.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + extra >= s.size()) {  // truncated sequence
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k <= extra; ++k) {
    unsigned char b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += extra + 1;
  return cp;
}

// Letter/digit classification for the scripts that occur in the corpora;
// unknown higher-plane code points default to letters so that only genuine
// punctuation is classified as such.
bool is_alnum_codepoint(char32_t c) {
  if (c < 0x80)
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  if (c < 0xC0) return c == 0xAA || c == 0xB5 || c == 0xBA;  // Latin-1 signs
  if (c < 0x100) return c != 0xD7 && c != 0xF7;              // Latin-1 letters
  if (c >= 0x2000 && c <= 0x206F) return false;  // general punctuation
  if (c >= 0x2E00 && c <= 0x2E7F) return false;  // supplemental punctuation
  if (c >= 0x3001 && c <= 0x303F) return false;  // CJK punctuation
  if (c == 0xFFFD) return false;
  return true;
}

}  // namespace

std::string to_lower(std::string_view word) {
  std::string out(word);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

bool contains_alnum(std::string_view word) {
  std::size_t i = 0;
  while (i < word.size())
    if (is_alnum_codepoint(decode_utf8(word, i))) return true;
  return false;
}

bool is_punct_word(std::string_view word) { return !contains_alnum(word); }

std::string stem_word(std::string_view word) {
  std::string lowered = to_lower(word);
  bool has_alpha = false;
  for (char c : lowered)
    if (c >= 'a' && c <= 'z') {
      has_alpha = true;
      break;
    }
  if (!has_alpha) return lowered;
  return porter_stem(lowered);
}

std::string stem_phrase(std::span<const std::string> words) {
  if (words.empty()) throw std::invalid_argument("empty phrase");
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += stem_word(words[i]);
  }
  return out;
}

std::string stem_phrase(const std::vector<std::string>& words) {
  return stem_phrase(std::span<const std::string>(words));
}

bool is_noun_tag(std::string_view pos) {
  return pos == "NN" || pos == "NNS" || pos == "NNP" || pos == "NNPS";
}

bool is_adjective_tag(std::string_view pos) {
  return pos == "JJ" || pos == "JJR" || pos == "JJS";
}

bool is_verb_tag(std::string_view pos) {
  return pos == "VB" || pos == "VBD" || pos == "VBG" || pos == "VBN" ||
         pos == "VBP" || pos == "VBZ";
}

bool is_content_tag(std::string_view pos) {
  return is_noun_tag(pos) || is_adjective_tag(pos) || is_verb_tag(pos);
}

Token::Token(std::string surface_, std::string pos_)
    : surface(std::move(surface_)), pos(std::move(pos_)) {
  if (contains_alnum(surface)) stem = stem_word(surface);
}

Stopwords::Stopwords(const std::vector<std::string>& words) {
  for (const auto& w : words) entries_.insert(to_lower(w));
}

Stopwords Stopwords::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file: " + path);
  Stopwords sw;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    sw.entries_.insert(to_lower(line));
  }
  return sw;
}

const Stopwords& Stopwords::english() {
  static const Stopwords english_list = [] {
    Stopwords sw;
    std::istringstream in{std::string(kEnglishStopwordsData)};
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      sw.entries_.insert(to_lower(line));
    }
    return sw;
  }();
  return english_list;
}

bool Stopwords::contains(std::string_view word) const {
  return entries_.count(to_lower(word)) > 0;
}

}  // namespace kpbench
