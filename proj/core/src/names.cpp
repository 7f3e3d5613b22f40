#include "numberless/names.hpp"

#include <cctype>

#include "numberless/errors.hpp"

namespace numberless {

NameTable::NameTable(std::initializer_list<std::string> names) {
  for (const auto& n : names) add(n);
}

NameTable::NameTable(std::vector<std::string> names) {
  for (auto& n : names) add(std::move(n));
}

std::uint32_t NameTable::add(std::string name) {
  if (name.empty()) throw ValidationError("empty identifier");
  for (char c : name)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw ValidationError("identifier contains whitespace: '" + name + "'");
  const auto id = static_cast<std::uint32_t>(names_.size());
  if (!index_.emplace(name, id).second) throw DuplicateName(name);
  names_.push_back(std::move(name));
  return id;
}

std::optional<std::uint32_t> NameTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string NameTable::fresh(std::string base) const {
  while (contains(base)) base += '\'';
  return base;
}

Word parse_word(const NameTable& alphabet, std::string_view text) {
  Word word;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      auto token = text.substr(i, j - i);
      auto id = alphabet.find(token);
      if (!id) throw UnknownLetter("'" + std::string(token) + "'");
      word.push_back(*id);
    }
    i = j;
  }
  return word;
}

std::string format_word(const NameTable& alphabet, const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(word[i]);
  }
  return out;
}

}  // namespace numberless
