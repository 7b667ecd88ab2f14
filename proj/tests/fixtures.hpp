#pragma once

// Hand-assembled ECP1/ECT1 byte streams, valid and malformed.

#include <cstdint>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "evconflict/error.hpp"

namespace fixtures {

class Bytes {
 public:
  Bytes& raw(const std::string& s) {
    data_.insert(data_.end(), s.begin(), s.end());
    return *this;
  }
  Bytes& u8(std::uint8_t v) {
    data_.push_back(v);
    return *this;
  }
  Bytes& u16(std::uint16_t v) { return le(v, 2); }
  Bytes& u32(std::uint32_t v) { return le(v, 4); }
  Bytes& u64(std::uint64_t v) { return le(v, 8); }
  Bytes& f32(float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    return u32(bits);
  }
  std::vector<std::uint8_t> take() const { return data_; }

 private:
  Bytes& le(std::uint64_t v, int n) {
    for (int k = 0; k < n; ++k) data_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
    return *this;
  }
  std::vector<std::uint8_t> data_;
};

/// I = 2, J = 3.
inline Bytes params_header(const std::string& magic = "ECP1", std::uint16_t version = 1, std::uint32_t n_class = 2,
                           std::uint32_t n_feat = 3) {
  Bytes b;
  b.raw(magic).u16(version).u32(n_class).u32(n_feat);
  return b;
}

inline std::vector<std::uint8_t> valid_params() {
  auto b = params_header();
  for (int k = 0; k < 6; ++k) b.f32(0.25f * static_cast<float>(k) - 0.5f);
  b.f32(0.125f).f32(-1.5f);
  return b.take();
}

inline Bytes record(Bytes b, std::uint64_t id, std::uint8_t label, std::uint8_t cap, std::uint8_t sem,
                    std::uint8_t reserved = 0) {
  b.u64(id).u8(label).u8(cap).u8(sem).u8(reserved);
  return b;
}

inline Bytes token(Bytes b, std::uint32_t id, float a, float c) {
  b.u32(id).f32(a).f32(c);
  return b;
}

/// J = 2, two records.
inline std::vector<std::uint8_t> valid_traces() {
  Bytes b;
  b.raw("ECT1").u16(1).u32(2).u32(2);
  b = record(b, 17, 1, 0, 2);
  b.u32(2);
  b = token(b, 1, 0.5f, -0.25f);
  b = token(b, 0, 3.0f, 1e-3f);
  b = record(b, 4, 255, 255, 255);
  b.u32(1);
  b = token(b, 7, -2.0f, 0.0f);
  return b.take();
}

inline Bytes traces_prefix(std::uint32_t count = 1) {
  Bytes b;
  b.raw("ECT1").u16(1).u32(2).u32(count);
  return b;
}

struct Malformed {
  std::string name;
  std::vector<std::uint8_t> bytes;
  evc::ErrorCode expected;
};

inline std::vector<Malformed> malformed_params() {
  using evc::ErrorCode;
  std::vector<Malformed> out;
  out.push_back({"params: empty file", {}, ErrorCode::Truncated});
  out.push_back({"params: short magic", Bytes().raw("EC").take(), ErrorCode::Truncated});
  out.push_back({"params: wrong magic", params_header("ECT1").take(), ErrorCode::BadMagic});
  out.push_back({"params: lower-case magic", params_header("ecp1").take(), ErrorCode::BadMagic});
  out.push_back({"params: version 2", params_header("ECP1", 2).take(), ErrorCode::BadVersion});
  out.push_back({"params: version 0", params_header("ECP1", 0).take(), ErrorCode::BadVersion});
  out.push_back({"params: header cut in I", Bytes().raw("ECP1").u16(1).u16(2).take(), ErrorCode::Truncated});
  out.push_back({"params: one class", params_header("ECP1", 1, 1, 3).take(), ErrorCode::InvalidParams});
  out.push_back({"params: zero features", params_header("ECP1", 1, 2, 0).take(), ErrorCode::InvalidParams});
  out.push_back({"params: no payload", params_header().take(), ErrorCode::Truncated});
  {
    auto b = params_header();
    for (int k = 0; k < 7; ++k) b.f32(1.0f);
    out.push_back({"params: bias cut short", b.take(), ErrorCode::Truncated});
  }
  out.push_back({"params: huge dimensions", params_header("ECP1", 1, 0xFFFFFFFFu, 0xFFFFFFFFu).take(),
                 ErrorCode::Truncated});
  {
    auto bytes = valid_params();
    bytes.push_back(0);
    out.push_back({"params: trailing byte", bytes, ErrorCode::TrailingData});
  }
  {
    auto b = params_header();
    b.f32(std::numeric_limits<float>::quiet_NaN());
    for (int k = 0; k < 7; ++k) b.f32(1.0f);
    out.push_back({"params: NaN weight", b.take(), ErrorCode::NonFinite});
  }
  {
    auto b = params_header();
    for (int k = 0; k < 7; ++k) b.f32(1.0f);
    b.f32(std::numeric_limits<float>::infinity());
    out.push_back({"params: infinite bias", b.take(), ErrorCode::NonFinite});
  }
  return out;
}

inline std::vector<Malformed> malformed_traces() {
  using evc::ErrorCode;
  std::vector<Malformed> out;
  out.push_back({"traces: empty file", {}, ErrorCode::Truncated});
  out.push_back({"traces: wrong magic", Bytes().raw("ECP1").u16(1).u32(2).u32(0).take(), ErrorCode::BadMagic});
  out.push_back({"traces: version 7", Bytes().raw("ECT1").u16(7).u32(2).u32(0).take(), ErrorCode::BadVersion});
  out.push_back({"traces: zero features", Bytes().raw("ECT1").u16(1).u32(0).u32(0).take(), ErrorCode::Shape});
  out.push_back({"traces: header cut in count", Bytes().raw("ECT1").u16(1).u32(2).u16(0).take(),
                 ErrorCode::Truncated});
  out.push_back({"traces: missing record", traces_prefix(1).take(), ErrorCode::Truncated});
  out.push_back({"traces: record cut in tags", traces_prefix(1).u64(1).u8(0).take(), ErrorCode::Truncated});
  out.push_back({"traces: bad label", record(traces_prefix(), 1, 2, 0, 0).u32(0).take(), ErrorCode::InvalidTag});
  out.push_back({"traces: bad capability", record(traces_prefix(), 1, 0, 7, 0).u32(0).take(), ErrorCode::InvalidTag});
  out.push_back({"traces: bad semantics", record(traces_prefix(), 1, 0, 0, 3).u32(0).take(), ErrorCode::InvalidTag});
  out.push_back({"traces: reserved byte set", record(traces_prefix(), 1, 0, 0, 0, 1).u32(0).take(),
                 ErrorCode::InvalidTag});
  out.push_back({"traces: zero tokens", record(traces_prefix(), 1, 0, 0, 0).u32(0).take(), ErrorCode::EmptyResponse});
  out.push_back({"traces: token block cut", token(record(traces_prefix(), 1, 0, 0, 0).u32(2), 0, 1.0f, 1.0f).take(),
                 ErrorCode::Truncated});
  out.push_back({"traces: huge token count", record(traces_prefix(), 1, 0, 0, 0).u32(0xFFFFFFFFu).take(),
                 ErrorCode::Truncated});
  out.push_back({"traces: huge record count", traces_prefix(0xFFFFFFFFu).take(), ErrorCode::Truncated});
  out.push_back({"traces: NaN feature",
                 token(record(traces_prefix(), 1, 0, 0, 0).u32(1), 0, std::numeric_limits<float>::quiet_NaN(), 1.0f)
                     .take(),
                 ErrorCode::NonFinite});
  out.push_back({"traces: infinite feature",
                 token(record(traces_prefix(), 1, 0, 0, 0).u32(1), 0, 1.0f, -std::numeric_limits<float>::infinity())
                     .take(),
                 ErrorCode::NonFinite});
  {
    auto bytes = valid_traces();
    bytes.push_back(0xAB);
    out.push_back({"traces: trailing byte", bytes, ErrorCode::TrailingData});
  }
  {
    auto bytes = valid_traces();
    bytes.pop_back();
    out.push_back({"traces: last byte missing", bytes, ErrorCode::Truncated});
  }
  return out;
}

}  // namespace fixtures
