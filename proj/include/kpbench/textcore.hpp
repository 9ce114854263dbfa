#ifndef KPBENCH_TEXTCORE_HPP
#define KPBENCH_TEXTCORE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace kpbench {

/// ASCII lowercase; bytes outside A-Z are left untouched.
std::string to_lower(std::string_view word);

/// True if the string contains at least one letter or digit (UTF-8 aware).
bool contains_alnum(std::string_view word);

/// True iff every character of the word is punctuation (no letters, no
/// digits). The empty word counts as punctuation-only.
bool is_punct_word(std::string_view word);

/// Porter stemmer (1980 algorithm with Martin Porter's standard revisions:
/// words of length <= 2 are left unchanged, step 2 uses bli->ble and adds
/// logi->log). Expects a lowercased word.
std::string porter_stem(std::string_view word);

/// Lowercases and stems a single word. Input without any alphabetic
/// character is returned lowercased unchanged.
std::string stem_word(std::string_view word);

/// Space-joined stems of the lowercased words, in order.
/// Throws std::invalid_argument on an empty phrase.
std::string stem_phrase(std::span<const std::string> words);
std::string stem_phrase(const std::vector<std::string>& words);

// Penn Treebank tag classes.
bool is_noun_tag(std::string_view pos);
bool is_adjective_tag(std::string_view pos);
bool is_verb_tag(std::string_view pos);
bool is_content_tag(std::string_view pos);  // noun, adjective or verb

struct Token {
  std::string surface;
  std::string pos;
  std::string stem;  // empty iff surface carries no alphanumeric character

  Token() = default;
  Token(std::string surface_, std::string pos_);
};

struct Sentence {
  std::vector<Token> tokens;
  std::size_t doc_offset = 0;  // index of the first token within the document

  std::size_t size() const { return tokens.size(); }
};

/// Case-insensitive stopword list. Membership is tested on the lowercased
/// surface form.
class Stopwords {
 public:
  Stopwords() = default;
  explicit Stopwords(const std::vector<std::string>& words);

  /// Loads a one-word-per-line UTF-8 file; '#' starts a comment line.
  static Stopwords load(const std::string& path);

  /// The built-in English list (same content as data/stopwords_en.txt).
  static const Stopwords& english();

  bool contains(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_set<std::string> entries_;
};

}  // namespace kpbench

#endif  // KPBENCH_TEXTCORE_HPP
