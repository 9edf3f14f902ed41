#include <cctype>

#include "pictex/dsl.hpp"

namespace pictex::dsl {

namespace {

bool is_punct(char c) {
  switch (c) {
    case '[': case ']': case '<': case '>': case '{': case '}':
    case '(': case ')': case '/': case ',': case '=':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      ++col;
    }
    ++i;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '%') {
      while (i < s.size() && s[i] != '\n') advance();
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (is_punct(c)) {
      t.kind = TokenKind::punct;
      t.text = std::string(1, c);
      advance();
    } else if (c == '"') {
      t.kind = TokenKind::string;
      advance();
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == '"') {
          advance();
          closed = true;
          break;
        }
        if (s[i] == '\\' && i + 1 < s.size()) {
          advance();
          const char e = s[i];
          t.text += e == 'n' ? '\n' : e;
          advance();
          continue;
        }
        t.text += s[i];
        advance();
      }
      if (!closed) throw Error(ErrorKind::parse, "unterminated string", t.line, t.column);
    } else {
      t.kind = TokenKind::word;
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
             !is_punct(s[i]) && s[i] != '"' && s[i] != '%') {
        t.text += s[i];
        advance();
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

}  // namespace pictex::dsl
