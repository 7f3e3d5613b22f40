#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace numberless {

using StateId = std::uint32_t;
using LetterId = std::uint32_t;
using Word = std::vector<LetterId>;

// Ordered table of identifiers. Declaration order is the canonical
// enumeration used everywhere an ordering of states or letters is needed.
class NameTable {
 public:
  NameTable() = default;
  NameTable(std::initializer_list<std::string> names);
  explicit NameTable(std::vector<std::string> names);

  // Appends a name and returns its index. Throws DuplicateName.
  std::uint32_t add(std::string name);

  std::optional<std::uint32_t> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  // `base` if unused, otherwise `base'`, `base''`, ...
  std::string fresh(std::string base) const;

  friend bool operator==(const NameTable& a, const NameTable& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Splits on whitespace and resolves each token. Throws UnknownLetter.
Word parse_word(const NameTable& alphabet, std::string_view text);
std::string format_word(const NameTable& alphabet, const Word& word);

}  // namespace numberless
