#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "tfree/errors.hpp"

namespace tfree {

// Atomic units produced by the splitter.
//
//   Word    - run of word characters (letters, underscore, non-ASCII),
//             at most SplitConfig::max_token_bytes bytes long
//   Digit   - exactly one ASCII digit
//   Special - exactly one non-alphanumeric, non-whitespace codepoint
//   Ws      - explicit whitespace; empty text means one plain space,
//             otherwise text holds the exact whitespace payload
//   NoWs    - suppresses the implicit whitespace the rule set would insert
//   WsRun   - 2^level consecutive copies (level 1..3) of one whitespace
//             character; text holds the unit character (space or newline)
enum class TokenKind : std::uint8_t { Word, Digit, Special, Ws, NoWs, WsRun };

struct Token {
  TokenKind kind = TokenKind::Word;
  std::string text;
  int ws_level = 0;  // WsRun only

  static Token word(std::string t) { return {TokenKind::Word, std::move(t), 0}; }
  static Token digit(char c) { return {TokenKind::Digit, std::string(1, c), 0}; }
  static Token special(std::string t) { return {TokenKind::Special, std::move(t), 0}; }
  static Token ws() { return {TokenKind::Ws, std::string(), 0}; }
  static Token ws(std::string payload) { return {TokenKind::Ws, std::move(payload), 0}; }
  static Token no_ws() { return {TokenKind::NoWs, std::string(), 0}; }
  static Token ws_run(int level, std::string unit) {
    return {TokenKind::WsRun, std::move(unit), level};
  }

  bool is_content() const {
    return kind == TokenKind::Word || kind == TokenKind::Digit ||
           kind == TokenKind::Special;
  }
  bool is_control() const { return !is_content(); }

  bool operator==(const Token& o) const = default;
};

// Whitespace handling rules for split/join. The two character sets drive
// the implicit-whitespace default between adjacent tokens: no space is
// implied after a digit or after any character in favor_no_ws_after, and
// none before any character in favor_no_ws_before.
struct SplitConfig {
  std::size_t max_token_bytes = 32;
  std::string favor_no_ws_before = "$.,;:#?!=-+*/\\()<>[]&@";
  std::string favor_no_ws_after = "#$=-+*/'\\\"(<[~^&@";

  void validate() const {
    if (max_token_bytes < 4) {
      throw InputError("SplitConfig: max_token_bytes must be >= 4");
    }
  }
};

// Printable tag used by the CLI token dump and by pattern hashing of
// control tokens ("<ws>", "<no_ws>", "<ws2>", "<ws4>", "<ws8>").
std::string token_tag(const Token& tok);

}  // namespace tfree
