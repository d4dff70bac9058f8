// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "cloudtint/error.hpp"

namespace cloudtint::io {

template <typename T>
T byteswap(T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  std::reverse(bytes, bytes + sizeof(T));
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

template <typename T>
T load_le(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) v = byteswap(v);
  return v;
}

template <typename T>
T load_be(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::little) v = byteswap(v);
  return v;
}

template <typename T>
void store_le(char* p, T v) {
  if constexpr (std::endian::native == std::endian::big) v = byteswap(v);
  std::memcpy(p, &v, sizeof(T));
}

/// Buffered reader over an owned istream that tracks byte offsets and line
/// numbers. Lines are returned without their terminator ("\n" or "\r\n").
class ByteSource {
 public:
  static constexpr std::size_t kBufferSize = 1 << 20;

  explicit ByteSource(std::unique_ptr<std::istream> in) : in_(std::move(in)), buf_(kBufferSize) {
    if (!in_ || !*in_) throw Error(ErrorCode::IoError, "input stream is not readable");
  }

  std::uint64_t offset() const noexcept { return consumed_ + pos_; }
  std::uint64_t line_number() const noexcept { return line_; }

  /// Returns false at end of input.
  bool next_line(std::string_view& line) {
    for (;;) {
      const char* begin = buf_.data() + pos_;
      const char* nl = static_cast<const char*>(std::memchr(begin, '\n', len_ - pos_));
      if (nl) {
        line_start_ = offset();
        std::size_t n = static_cast<std::size_t>(nl - begin);
        pos_ += n + 1;
        ++line_;
        if (n > 0 && begin[n - 1] == '\r') --n;
        line = std::string_view(begin, n);
        return true;
      }
      if (eof_) {
        if (pos_ == len_) return false;
        line_start_ = offset();
        std::size_t n = len_ - pos_;
        pos_ = len_;
        ++line_;
        if (n > 0 && begin[n - 1] == '\r') --n;
        line = std::string_view(begin, n);
        return true;
      }
      compact_and_fill();
    }
  }

  /// Byte offset where the most recently returned line starts.
  std::uint64_t line_start() const noexcept { return line_start_; }

  /// Returns a pointer to exactly n contiguous bytes or throws ParseError on
  /// truncated input. The pointer is valid until the next call.
  const char* read_exact(std::size_t n) {
    if (len_ - pos_ < n) {
      if (n > buf_.size()) buf_.resize(n);
      while (len_ - pos_ < n && !eof_) compact_and_fill();
      if (len_ - pos_ < n)
        throw Error(ErrorCode::ParseError, "unexpected end of file", {std::nullopt, offset(), std::nullopt});
    }
    const char* p = buf_.data() + pos_;
    pos_ += n;
    return p;
  }

  /// Reads up to `max` bytes; returns how many were available.
  std::size_t read_some(std::size_t max, const char*& out) {
    if (pos_ == len_ && !eof_) compact_and_fill();
    const std::size_t n = std::min(max, len_ - pos_);
    out = buf_.data() + pos_;
    pos_ += n;
    return n;
  }

  void skip(std::uint64_t n) {
    while (n > 0) {
      const char* ignored;
      const std::size_t got = read_some(static_cast<std::size_t>(std::min<std::uint64_t>(n, buf_.size())), ignored);
      if (got == 0)
        throw Error(ErrorCode::ParseError, "unexpected end of file", {std::nullopt, offset(), std::nullopt});
      n -= got;
    }
  }

  bool at_end() {
    if (pos_ < len_) return false;
    if (!eof_) compact_and_fill();
    return pos_ == len_;
  }

  /// Rewinds to the start of the stream; requires a seekable stream.
  void rewind() {
    in_->clear();
    in_->seekg(0);
    if (!*in_) throw Error(ErrorCode::IoError, "input stream is not seekable");
    consumed_ = 0;
    pos_ = len_ = 0;
    line_ = 0;
    eof_ = false;
  }

 private:
  void compact_and_fill() {
    if (pos_ > 0) {
      std::memmove(buf_.data(), buf_.data() + pos_, len_ - pos_);
      consumed_ += pos_;
      len_ -= pos_;
      pos_ = 0;
    }
    if (len_ == buf_.size()) buf_.resize(buf_.size() * 2);
    in_->read(buf_.data() + len_, static_cast<std::streamsize>(buf_.size() - len_));
    const auto got = static_cast<std::size_t>(in_->gcount());
    len_ += got;
    if (got == 0 || in_->eof()) eof_ = true;
    if (in_->bad()) throw Error(ErrorCode::IoError, "read failure");
  }

  std::unique_ptr<std::istream> in_;
  std::vector<char> buf_;
  std::size_t pos_ = 0;
  std::size_t len_ = 0;
  std::uint64_t consumed_ = 0;
  std::uint64_t line_ = 0;
  std::uint64_t line_start_ = 0;
  bool eof_ = false;
};

/// Buffered writer that counts bytes.
class ByteSink {
 public:
  explicit ByteSink(std::ostream& out) : out_(out) { buf_.reserve(kFlushAt + 4096); }
  ByteSink(const ByteSink&) = delete;
  ByteSink& operator=(const ByteSink&) = delete;
  ~ByteSink() {
    try {
      flush();
    } catch (...) {
    }
  }

  void put(std::string_view s) {
    buf_.append(s);
    if (buf_.size() >= kFlushAt) flush();
  }
  void put(char c) {
    buf_.push_back(c);
    if (buf_.size() >= kFlushAt) flush();
  }
  template <typename T>
  void put_le(T v) {
    char tmp[sizeof(T)];
    store_le(tmp, v);
    put(std::string_view(tmp, sizeof(T)));
  }
  void put_zeros(std::size_t n) { put(std::string(n, '\0')); }

  /// Appends a number printed with `decimals` fixed digits.
  void put_fixed(double v, int decimals) {
    char tmp[64];
    auto res = std::to_chars(tmp, tmp + sizeof(tmp), v, std::chars_format::fixed, decimals);
    if (res.ec != std::errc{}) throw Error(ErrorCode::IoError, "number formatting failed");
    put(std::string_view(tmp, static_cast<std::size_t>(res.ptr - tmp)));
  }
  template <typename Int>
  void put_int(Int v) {
    char tmp[32];
    auto res = std::to_chars(tmp, tmp + sizeof(tmp), v);
    put(std::string_view(tmp, static_cast<std::size_t>(res.ptr - tmp)));
  }

  void flush() {
    if (buf_.empty()) return;
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!out_) throw Error(ErrorCode::IoError, "write failure");
    written_ += buf_.size();
    buf_.clear();
  }

  std::uint64_t bytes_written() const noexcept { return written_ + buf_.size(); }

 private:
  static constexpr std::size_t kFlushAt = 1 << 20;
  std::ostream& out_;
  std::string buf_;
  std::uint64_t written_ = 0;
};

/// Splits on ASCII whitespace into at most `max` tokens; returns the token
/// count found (which may exceed max, signalling extra fields).
inline std::size_t split_ws(std::string_view line, std::string_view* tokens, std::size_t max) {
  std::size_t n = 0;
  std::size_t i = 0;
  const std::size_t len = line.size();
  while (i < len) {
    while (i < len && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == '\f' || line[i] == '\v')) ++i;
    if (i >= len) break;
    std::size_t j = i;
    while (j < len && !(line[j] == ' ' || line[j] == '\t' || line[j] == '\r' || line[j] == '\f' || line[j] == '\v')) ++j;
    if (n < max) tokens[n] = line.substr(i, j - i);
    ++n;
    i = j;
  }
  return n;
}

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const char* end = tok.data() + tok.size();
  auto res = std::from_chars(tok.data(), end, out);
  if (res.ec == std::errc{} && res.ptr == end) return true;
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars rejects subnormals on some toolchains; strtod does not.
    if (res.ec == std::errc::result_out_of_range && res.ptr == end) {
      std::string tmp(tok);
      char* stop = nullptr;
      if constexpr (std::is_same_v<T, float>)
        out = std::strtof(tmp.c_str(), &stop);
      else
        out = std::strtod(tmp.c_str(), &stop);
      return stop == tmp.c_str() + tmp.size();
    }
  }
  return false;
}

}  // namespace cloudtint::io
