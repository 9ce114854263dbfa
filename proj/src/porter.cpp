// Porter stemmer, following the 1980 algorithm with Martin Porter's standard
// revisions: strings of length 1 or 2 are left unchanged, step 2 maps
// bli->ble (instead of abli->able) and adds logi->log.
//
// Rule-list semantics: within a step the first suffix that string-matches is
// the only one tried; if its condition fails the step leaves the word alone.

#include "kpbench/textcore.hpp"

#include <array>
#include <functional>
#include <string>
#include <string_view>

namespace kpbench {
namespace {

bool is_vowel_char(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// 'y' counts as a consonant at position 0 or after a vowel, as a vowel after
// a consonant. Every non-vowel byte (including digits) is a consonant.
bool is_consonant(std::string_view w, std::size_t i) {
  char c = w[i];
  if (is_vowel_char(c)) return false;
  if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
  return true;
}

// m in [C](VC)^m[V]: the number of vowel->consonant transitions.
int measure(std::string_view stem) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < stem.size(); ++i) {
    bool vowel = !is_consonant(stem, i);
    if (!vowel && prev_vowel) ++m;
    prev_vowel = vowel;
  }
  return m;
}

bool has_vowel(std::string_view stem) {
  for (std::size_t i = 0; i < stem.size(); ++i)
    if (!is_consonant(stem, i)) return true;
  return false;
}

bool ends_double_consonant(std::string_view w) {
  auto n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends consonant-vowel-consonant where the final consonant is not
// w, x or y.
bool ends_cvc(std::string_view w) {
  auto n = w.size();
  if (n < 3) return false;
  char last = w[n - 1];
  return is_consonant(w, n - 3) && !is_consonant(w, n - 2) &&
         is_consonant(w, n - 1) && last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

using Condition = bool (*)(std::string_view);

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
  Condition condition;  // applied to the word minus the suffix; null = always
};

std::string apply_rules(std::string_view w, std::span<const Rule> rules) {
  for (const auto& rule : rules) {
    if (!ends_with(w, rule.suffix)) continue;
    std::string_view stem = w.substr(0, w.size() - rule.suffix.size());
    if (rule.condition == nullptr || rule.condition(stem)) {
      std::string out(stem);
      out += rule.replacement;
      return out;
    }
    return std::string(w);  // matched but condition failed: stop the step
  }
  return std::string(w);
}

bool measure_gt0(std::string_view stem) { return measure(stem) > 0; }
bool measure_gt1(std::string_view stem) { return measure(stem) > 1; }

std::string step1a(std::string_view w) {
  static constexpr Rule rules[] = {
      {"sses", "ss", nullptr},
      {"ies", "i", nullptr},
      {"ss", "ss", nullptr},
      {"s", "", nullptr},
  };
  return apply_rules(w, rules);
}

std::string step1b(std::string_view w) {
  if (ends_with(w, "eed")) {
    std::string_view stem = w.substr(0, w.size() - 3);
    if (measure(stem) > 0) return std::string(stem) + "ee";
    return std::string(w);
  }
  std::string_view inter;
  if (ends_with(w, "ed") && has_vowel(w.substr(0, w.size() - 2))) {
    inter = w.substr(0, w.size() - 2);
  } else if (ends_with(w, "ing") && has_vowel(w.substr(0, w.size() - 3))) {
    inter = w.substr(0, w.size() - 3);
  } else {
    return std::string(w);
  }

  static constexpr Rule cleanup[] = {
      {"at", "ate", nullptr},
      {"bl", "ble", nullptr},
      {"iz", "ize", nullptr},
  };
  for (const auto& rule : cleanup)
    if (ends_with(inter, rule.suffix))
      return std::string(inter.substr(0, inter.size() - rule.suffix.size())) +
             std::string(rule.replacement);
  if (ends_double_consonant(inter)) {
    char last = inter.back();
    if (last != 'l' && last != 's' && last != 'z')
      return std::string(inter.substr(0, inter.size() - 1));
    return std::string(inter);
  }
  if (measure(inter) == 1 && ends_cvc(inter)) return std::string(inter) + "e";
  return std::string(inter);
}

std::string step1c(std::string_view w) {
  static constexpr Rule rules[] = {{"y", "i", has_vowel}};
  return apply_rules(w, rules);
}

std::string step2(std::string_view w) {
  static constexpr Rule rules[] = {
      {"ational", "ate", measure_gt0}, {"tional", "tion", measure_gt0},
      {"enci", "ence", measure_gt0},   {"anci", "ance", measure_gt0},
      {"izer", "ize", measure_gt0},    {"bli", "ble", measure_gt0},
      {"alli", "al", measure_gt0},     {"entli", "ent", measure_gt0},
      {"eli", "e", measure_gt0},       {"ousli", "ous", measure_gt0},
      {"ization", "ize", measure_gt0}, {"ation", "ate", measure_gt0},
      {"ator", "ate", measure_gt0},    {"alism", "al", measure_gt0},
      {"iveness", "ive", measure_gt0}, {"fulness", "ful", measure_gt0},
      {"ousness", "ous", measure_gt0}, {"aliti", "al", measure_gt0},
      {"iviti", "ive", measure_gt0},   {"biliti", "ble", measure_gt0},
      {"logi", "log", measure_gt0},
  };
  return apply_rules(w, rules);
}

std::string step3(std::string_view w) {
  static constexpr Rule rules[] = {
      {"icate", "ic", measure_gt0}, {"ative", "", measure_gt0},
      {"alize", "al", measure_gt0}, {"iciti", "ic", measure_gt0},
      {"ical", "ic", measure_gt0},  {"ful", "", measure_gt0},
      {"ness", "", measure_gt0},
  };
  return apply_rules(w, rules);
}

bool ion_condition(std::string_view stem) {
  return measure(stem) > 1 && !stem.empty() &&
         (stem.back() == 's' || stem.back() == 't');
}

std::string step4(std::string_view w) {
  static constexpr Rule rules[] = {
      {"al", "", measure_gt1},    {"ance", "", measure_gt1},
      {"ence", "", measure_gt1},  {"er", "", measure_gt1},
      {"ic", "", measure_gt1},    {"able", "", measure_gt1},
      {"ible", "", measure_gt1},  {"ant", "", measure_gt1},
      {"ement", "", measure_gt1}, {"ment", "", measure_gt1},
      {"ent", "", measure_gt1},   {"ion", "", ion_condition},
      {"ou", "", measure_gt1},    {"ism", "", measure_gt1},
      {"ate", "", measure_gt1},   {"iti", "", measure_gt1},
      {"ous", "", measure_gt1},   {"ive", "", measure_gt1},
      {"ize", "", measure_gt1},
  };
  return apply_rules(w, rules);
}

std::string step5a(std::string_view w) {
  if (!w.empty() && w.back() == 'e') {
    std::string_view stem = w.substr(0, w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) return std::string(stem);
  }
  return std::string(w);
}

std::string step5b(std::string_view w) {
  if (ends_with(w, "ll") && measure(w.substr(0, w.size() - 1)) > 1)
    return std::string(w.substr(0, w.size() - 1));
  return std::string(w);
}

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  std::string w = step1a(word);
  w = step1b(w);
  w = step1c(w);
  w = step2(w);
  w = step3(w);
  w = step4(w);
  w = step5a(w);
  w = step5b(w);
  return w;
}

}  // namespace kpbench
