#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

namespace legdga {

// Library-wide error types. The CLI maps each onto an exit code.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct VerificationError : Error {
  using Error::Error;
};
struct ResourceError : Error {
  using Error::Error;
};

// Interned generator name. Ids are process-wide and never reused; two symbols
// compare equal iff their names are equal.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name) : id_(table().intern(name)) {}

  std::uint32_t id() const { return id_; }
  const std::string& name() const { return table().name(id_); }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

 private:
  class Table {
   public:
    std::uint32_t intern(std::string_view s) {
      {
        std::shared_lock lock(mu_);
        if (auto it = ids_.find(std::string(s)); it != ids_.end()) return it->second;
      }
      std::unique_lock lock(mu_);
      auto [it, inserted] = ids_.emplace(std::string(s), 0);
      if (inserted) {
        it->second = static_cast<std::uint32_t>(names_.size());
        names_.emplace_back(s);
      }
      return it->second;
    }
    const std::string& name(std::uint32_t id) const {
      std::shared_lock lock(mu_);
      return names_.at(id);  // deque keeps references stable
    }

   private:
    mutable std::shared_mutex mu_;
    std::deque<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
  };

  static Table& table() {
    static Table t;
    return t;
  }

  std::uint32_t id_ = 0xffffffffu;
};

inline bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}
inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_' || c == '\'' || c == '^';
}
inline bool is_tag_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '=';
}

// Length of the identifier starting at s[pos], or 0. Identifiers are
// [A-Za-z] followed by [A-Za-z0-9_'^] or bracketed copy tags such as "[-]".
inline std::size_t scan_ident(std::string_view s, std::size_t pos) {
  if (pos >= s.size() || !is_ident_start(s[pos])) return 0;
  std::size_t i = pos + 1;
  while (i < s.size()) {
    if (is_ident_char(s[i])) {
      ++i;
    } else if (s[i] == '[') {
      std::size_t j = i + 1;
      while (j < s.size() && is_tag_char(s[j])) ++j;
      if (j == i + 1 || j >= s.size() || s[j] != ']') break;
      i = j + 1;
    } else {
      break;
    }
  }
  return i - pos;
}

inline bool is_valid_ident(std::string_view s) {
  return !s.empty() && scan_ident(s, 0) == s.size();
}

// Natural ordering on names: digit runs compare numerically, so b2 < b10.
inline bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && a[i2] == '0') ++i2;
      while (j2 < b.size() && b[j2] == '0') ++j2;
      std::size_t ie = i2, je = j2;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      if (ie - i2 != je - j2) return ie - i2 < je - j2;
      auto c = a.substr(i2, ie - i2).compare(b.substr(j2, je - j2));
      if (c != 0) return c < 0;
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

}  // namespace legdga

template <>
struct std::hash<legdga::Symbol> {
  std::size_t operator()(legdga::Symbol s) const noexcept { return std::hash<std::uint32_t>{}(s.id()); }
};
