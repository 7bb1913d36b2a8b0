#include "tfree/splitter.hpp"

#include <optional>

namespace tfree {

namespace {

bool is_ascii_digit(std::uint32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_ascii_alpha(std::uint32_t cp) {
  return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
}

// Whitespace kinds: space and newline are WsRun-eligible; everything
// else round-trips as a Ws token carrying its own payload.
enum class WsKind { None, Space, Newline, Other };

WsKind ws_kind(std::uint32_t cp) {
  switch (cp) {
    case 0x20: return WsKind::Space;
    case 0x0A: return WsKind::Newline;
    case 0x09:
    case 0x0B:
    case 0x0C:
    case 0x0D:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000: return WsKind::Other;
    default:
      if (cp >= 0x2000 && cp <= 0x200A) return WsKind::Other;
      return WsKind::None;
  }
}

void encode_utf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool in_set(std::uint32_t cp, const std::string& set) {
  return cp < 0x80 && set.find(static_cast<char>(cp)) != std::string::npos;
}

std::uint32_t first_codepoint(const Token& tok) {
  std::size_t pos = 0;
  return decode_utf8(tok.text, pos);
}

std::uint32_t last_codepoint(const Token& tok) {
  // UTF-8 continuation bytes have the form 10xxxxxx.
  std::size_t start = tok.text.size();
  do {
    --start;
  } while (start > 0 && (static_cast<unsigned char>(tok.text[start]) & 0xC0) == 0x80);
  std::size_t pos = start;
  return decode_utf8(tok.text, pos);
}

// One maximal run of a single repeated whitespace codepoint.
struct WsRunRaw {
  std::uint32_t cp = 0;
  std::size_t count = 0;
};

class Splitter {
 public:
  Splitter(std::string_view text, const SplitConfig& cfg) : text_(text), cfg_(cfg) {}

  std::vector<Token> run() {
    std::size_t pos = 0;
    while (pos < text_.size()) {
      std::size_t start = pos;
      std::uint32_t cp = decode_utf8(text_, pos);
      WsKind wk = ws_kind(cp);
      if (wk != WsKind::None) {
        if (!gap_.empty() && gap_.back().cp == cp) {
          gap_.back().count++;
        } else {
          gap_.push_back({cp, 1});
        }
      } else if (is_ascii_digit(cp)) {
        emit_content(Token::digit(static_cast<char>(cp)));
      } else if (is_word_codepoint(cp)) {
        pos = start;
        scan_word(pos);
      } else {
        emit_content(Token::special(std::string(text_.substr(start, pos - start))));
      }
    }
    flush_gap(nullptr);
    return std::move(out_);
  }

 private:
  // Maximal run of word codepoints, chunked at UTF-8 boundaries so no
  // Word token exceeds max_token_bytes. Adjacent chunks get a NoWs from
  // the ordinary empty-gap rule below.
  void scan_word(std::size_t& pos) {
    std::string chunk;
    while (pos < text_.size()) {
      std::size_t start = pos;
      std::uint32_t cp = decode_utf8(text_, pos);
      if (!is_word_codepoint(cp)) {
        pos = start;
        break;
      }
      std::size_t cp_bytes = pos - start;
      if (chunk.size() + cp_bytes > cfg_.max_token_bytes) {
        emit_content(Token::word(std::move(chunk)));
        chunk.clear();
      }
      chunk.append(text_.substr(start, cp_bytes));
    }
    if (!chunk.empty()) emit_content(Token::word(std::move(chunk)));
  }

  void emit_content(Token tok) {
    flush_gap(&tok);
    out_.push_back(std::move(tok));
    prev_ = out_.back();
  }

  // Encodes the whitespace collected since the previous content token.
  // A gap that is exactly the predicted single space emits nothing; an
  // empty gap where a space was predicted emits NoWs; everything else is
  // spelled out explicitly and overrides the prediction.
  void flush_gap(const Token* next) {
    bool predicted = prev_ && next && implicit_space(*prev_, *next, cfg_);
    if (gap_.empty()) {
      if (predicted) out_.push_back(Token::no_ws());
    } else if (gap_.size() == 1 && gap_[0].cp == 0x20 && gap_[0].count == 1) {
      if (!predicted) out_.push_back(Token::ws());
    } else {
      for (const WsRunRaw& run : gap_) encode_run(run);
    }
    gap_.clear();
  }

  void encode_run(const WsRunRaw& run) {
    std::string unit;
    encode_utf8(run.cp, unit);
    if (run.cp == 0x20 || run.cp == 0x0A) {
      std::size_t left = run.count;
      while (left >= 8) {
        out_.push_back(Token::ws_run(3, unit));
        left -= 8;
      }
      if (left >= 4) {
        out_.push_back(Token::ws_run(2, unit));
        left -= 4;
      }
      if (left >= 2) {
        out_.push_back(Token::ws_run(1, unit));
        left -= 2;
      }
      if (left == 1) {
        out_.push_back(run.cp == 0x20 ? Token::ws() : Token::ws(unit));
      }
    } else {
      for (std::size_t i = 0; i < run.count; ++i) out_.push_back(Token::ws(unit));
    }
  }

  std::string_view text_;
  const SplitConfig& cfg_;
  std::vector<Token> out_;
  std::optional<Token> prev_;
  std::vector<WsRunRaw> gap_;
};

}  // namespace

bool is_word_codepoint(std::uint32_t cp) {
  if (cp < 0x80) return is_ascii_alpha(cp) || cp == '_';
  return ws_kind(cp) == WsKind::None;
}

bool is_whitespace_codepoint(std::uint32_t cp) { return ws_kind(cp) != WsKind::None; }

std::uint32_t decode_utf8(std::string_view text, std::size_t& pos) {
  if (pos >= text.size()) throw InputError("utf8: read past end of input");
  unsigned char b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len;
  std::uint32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    throw InputError("utf8: invalid lead byte at offset " + std::to_string(pos));
  }
  if (pos + len > text.size()) {
    throw InputError("utf8: truncated sequence at offset " + std::to_string(pos));
  }
  for (int i = 1; i < len; ++i) {
    unsigned char b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) {
      throw InputError("utf8: invalid continuation byte at offset " +
                       std::to_string(pos + i));
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr std::uint32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLen[len]) {
    throw InputError("utf8: overlong encoding at offset " + std::to_string(pos));
  }
  if (cp >= 0xD800 && cp <= 0xDFFF) {
    throw InputError("utf8: surrogate codepoint at offset " + std::to_string(pos));
  }
  if (cp > 0x10FFFF) {
    throw InputError("utf8: codepoint out of range at offset " + std::to_string(pos));
  }
  pos += len;
  return cp;
}

bool implicit_space(const Token& prev, const Token& next, const SplitConfig& cfg) {
  if (!prev.is_content() || !next.is_content()) return false;
  if (prev.kind == TokenKind::Digit) return false;
  if (in_set(last_codepoint(prev), cfg.favor_no_ws_after)) return false;
  if (in_set(first_codepoint(next), cfg.favor_no_ws_before)) return false;
  return true;
}

std::vector<Token> split(std::string_view text, const SplitConfig& cfg) {
  cfg.validate();
  return Splitter(text, cfg).run();
}

std::string join(std::span<const Token> tokens, const SplitConfig& cfg) {
  cfg.validate();
  std::string out;
  const Token* prev = nullptr;
  bool explicit_ctrl = false;
  for (const Token& tok : tokens) {
    switch (tok.kind) {
      case TokenKind::Word:
      case TokenKind::Digit:
      case TokenKind::Special:
        if (prev && !explicit_ctrl && implicit_space(*prev, tok, cfg)) {
          out.push_back(' ');
        }
        out.append(tok.text);
        prev = &tok;
        explicit_ctrl = false;
        break;
      case TokenKind::NoWs:
        explicit_ctrl = true;
        break;
      case TokenKind::Ws:
        explicit_ctrl = true;
        out.append(tok.text.empty() ? std::string(1, ' ') : tok.text);
        break;
      case TokenKind::WsRun: {
        explicit_ctrl = true;
        std::string unit = tok.text.empty() ? std::string(1, ' ') : tok.text;
        int copies = 1 << (tok.ws_level < 1 ? 1 : (tok.ws_level > 3 ? 3 : tok.ws_level));
        for (int i = 0; i < copies; ++i) out.append(unit);
        break;
      }
    }
  }
  return out;
}

Token token_from_text(std::string_view text, const SplitConfig& cfg) {
  if (text == "<ws>") return Token::ws();
  if (text == "<no_ws>") return Token::no_ws();
  if (text == "<ws2>") return Token::ws_run(1, " ");
  if (text == "<ws4>") return Token::ws_run(2, " ");
  if (text == "<ws8>") return Token::ws_run(3, " ");
  std::vector<Token> toks = split(text, cfg);
  if (toks.size() != 1 || !toks[0].is_content()) {
    throw InputError("not a single token: '" + std::string(text) + "'");
  }
  return toks[0];
}

std::string token_tag(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::Ws: return "<ws>";
    case TokenKind::NoWs: return "<no_ws>";
    case TokenKind::WsRun:
      switch (tok.ws_level) {
        case 1: return "<ws2>";
        case 2: return "<ws4>";
        default: return "<ws8>";
      }
    case TokenKind::Word: return "word";
    case TokenKind::Digit: return "digit";
    default: return "special";
  }
}

}  // namespace tfree
