#include "evconflict/trace_io.hpp"

#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <system_error>

#include "evconflict/error.hpp"
#include "evconflict/numerics.hpp"

namespace evc::io {

namespace {

constexpr char kParamsMagic[4] = {'E', 'C', 'P', '1'};
constexpr char kTracesMagic[4] = {'E', 'C', 'T', '1'};

class ByteWriter {
 public:
  void magic(const char (&m)[4]) { out_.insert(out_.end(), m, m + 4); }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void f32(double v) { u32(std::bit_cast<std::uint32_t>(static_cast<float>(v))); }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  void le(std::uint64_t v, int n) {
    for (int k = 0; k < n; ++k) out_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }

  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }

  void expect_magic(const char (&m)[4]) {
    need(4, "magic");
    if (std::memcmp(bytes_.data() + pos_, m, 4) != 0) {
      fail(ErrorCode::BadMagic, "expected magic \"" + std::string(m, 4) + "\"");
    }
    pos_ += 4;
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(le(1, "u8")); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(le(2, "u16")); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(le(4, "u32")); }
  std::uint64_t u64() { return le(8, "u64"); }
  double f32() {
    const float f = std::bit_cast<float>(u32());
    require(std::isfinite(f), ErrorCode::NonFinite, "non-finite real at byte offset " + std::to_string(pos_ - 4));
    return static_cast<double>(f);
  }

  void need(std::uint64_t n, const char* what) const {
    if (n > remaining()) {
      fail(ErrorCode::Truncated, std::string("file truncated while reading ") + what + " at byte offset " +
                                     std::to_string(pos_));
    }
  }

 private:
  std::uint64_t le(int n, const char* what) {
    need(static_cast<std::uint64_t>(n), what);
    std::uint64_t v = 0;
    for (int k = 0; k < n; ++k) v |= std::uint64_t{bytes_[pos_ + k]} << (8 * k);
    pos_ += n;
    return v;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void check_version(std::uint16_t version) {
  require(version == kFormatVersion, ErrorCode::BadVersion, "unsupported format version " + std::to_string(version));
}

void check_tail(const ByteReader& in) {
  require(in.remaining() == 0, ErrorCode::TrailingData,
          std::to_string(in.remaining()) + " unexpected bytes after the last record");
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(sep, start);
    out.push_back(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

double parse_real(std::string_view cell, std::size_t line_no) {
  std::string s(cell);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  require(!s.empty() && end == s.c_str() + s.size() && std::isfinite(v), ErrorCode::Parse,
          "line " + std::to_string(line_no) + ": bad real \"" + s + "\"");
  return v;
}

std::uint64_t parse_uint(std::string_view cell, std::size_t line_no) {
  std::string s(cell);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  require(!s.empty() && s[0] != '-' && end == s.c_str() + s.size() && errno == 0, ErrorCode::Parse,
          "line " + std::to_string(line_no) + ": bad integer \"" + s + "\"");
  return v;
}

template <typename T>
T parse_tag(std::string_view cell, std::size_t line_no, std::optional<T> (*from_byte)(std::uint8_t)) {
  const std::uint64_t raw = parse_uint(cell, line_no);
  const auto tag = raw <= 255 ? from_byte(static_cast<std::uint8_t>(raw)) : std::nullopt;
  require(tag.has_value(), ErrorCode::InvalidTag, "line " + std::to_string(line_no) + ": invalid tag " + std::string(cell));
  return *tag;
}

std::string metric_cell(const ScoreRecord& r, Metric m) {
  switch (m) {
    case Metric::KappaMax: return format_real(r.kappa_max);
    case Metric::Pe: return format_real(r.pe);
    case Metric::LnPe: return format_real(r.ln_pe);
    case Metric::Ps: return format_real(r.ps);
    case Metric::Lps: return format_real(r.lps);
    case Metric::Length: return std::to_string(r.length);
  }
  return {};
}

void set_metric(ScoreRecord& r, Metric m, std::string_view cell, std::size_t line_no) {
  switch (m) {
    case Metric::KappaMax: r.kappa_max = parse_real(cell, line_no); break;
    case Metric::Pe: r.pe = parse_real(cell, line_no); break;
    case Metric::LnPe: r.ln_pe = parse_real(cell, line_no); break;
    case Metric::Ps: r.ps = parse_real(cell, line_no); break;
    case Metric::Lps: r.lps = parse_real(cell, line_no); break;
    case Metric::Length: r.length = parse_uint(cell, line_no); break;
  }
}

}  // namespace

// --- ECP1 ---------------------------------------------------------------------

std::vector<std::uint8_t> encode_params(const FfnParams& params) {
  params.validate();
  require(params.vocab_size() <= UINT32_MAX && params.feature_dim() <= UINT32_MAX, ErrorCode::InvalidParams,
          "dimensions exceed the ECP1 range");
  ByteWriter out;
  out.magic(kParamsMagic);
  out.u16(kFormatVersion);
  out.u32(static_cast<std::uint32_t>(params.vocab_size()));
  out.u32(static_cast<std::uint32_t>(params.feature_dim()));
  for (double v : params.weights.data()) out.f32(v);
  for (double v : params.bias) out.f32(v);
  return out.take();
}

FfnParams decode_params(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  in.expect_magic(kParamsMagic);
  check_version(in.u16());
  const std::uint64_t n_class = in.u32();
  const std::uint64_t n_feat = in.u32();
  require(n_class >= 2, ErrorCode::InvalidParams, "vocabulary size must be at least 2");
  require(n_feat >= 1, ErrorCode::InvalidParams, "feature dimension must be at least 1");
  // (J + 1) floats per class; compared by division to stay clear of overflow.
  require(n_feat + 1 <= in.remaining() / 4 / n_class, ErrorCode::Truncated,
          "declared " + std::to_string(n_class) + "x" + std::to_string(n_feat) + " parameters exceed the file body");

  FfnParams params;
  std::vector<double> weights(n_class * n_feat);
  for (double& v : weights) v = in.f32();
  params.weights = Matrix(n_class, n_feat, std::move(weights));
  params.bias.resize(n_class);
  for (double& v : params.bias) v = in.f32();
  check_tail(in);
  return params;
}

// --- ECT1 ---------------------------------------------------------------------

std::vector<std::uint8_t> encode_traces(const TraceSet& set) {
  require(set.feature_dim >= 1, ErrorCode::Shape, "feature dimension must be at least 1");
  require(set.traces.size() <= UINT32_MAX, ErrorCode::Shape, "too many records for ECT1");
  ByteWriter out;
  out.magic(kTracesMagic);
  out.u16(kFormatVersion);
  out.u32(set.feature_dim);
  out.u32(static_cast<std::uint32_t>(set.traces.size()));
  for (const auto& t : set.traces) {
    require(!t.tokens.empty(), ErrorCode::EmptyResponse,
            "response " + std::to_string(t.response_id) + " has no tokens");
    require(t.tokens.size() <= UINT32_MAX, ErrorCode::Shape, "too many tokens for ECT1");
    out.u64(t.response_id);
    out.u8(static_cast<std::uint8_t>(t.label));
    out.u8(static_cast<std::uint8_t>(t.capability));
    out.u8(static_cast<std::uint8_t>(t.semantics));
    out.u8(0);
    out.u32(static_cast<std::uint32_t>(t.tokens.size()));
    for (const auto& tok : t.tokens) {
      require(tok.features.size() == set.feature_dim, ErrorCode::Shape,
              "response " + std::to_string(t.response_id) + " has a feature vector of the wrong length");
      require(all_finite(tok.features.values), ErrorCode::NonFinite, "non-finite feature value");
      out.u32(tok.token_id);
      for (double v : tok.features.values) out.f32(v);
    }
  }
  return out.take();
}

TraceSet decode_traces(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  in.expect_magic(kTracesMagic);
  check_version(in.u16());
  TraceSet set;
  set.feature_dim = in.u32();
  require(set.feature_dim >= 1, ErrorCode::Shape, "feature dimension must be at least 1");
  const std::uint32_t count = in.u32();
  // Each record occupies at least 16 header bytes; reject impossible counts
  // before reserving anything.
  in.need(std::uint64_t{count} * 16, "record headers");
  set.traces.reserve(count);

  const std::uint64_t token_bytes = 4 + 4 * std::uint64_t{set.feature_dim};
  for (std::uint32_t r = 0; r < count; ++r) {
    ResponseTrace t;
    t.response_id = in.u64();
    const std::uint8_t label = in.u8();
    const std::uint8_t capability = in.u8();
    const std::uint8_t semantics = in.u8();
    const std::uint8_t reserved = in.u8();
    const std::string where = "record " + std::to_string(r) + ": ";
    const auto l = label_from_byte(label);
    const auto c = capability_from_byte(capability);
    const auto s = semantics_from_byte(semantics);
    require(l.has_value(), ErrorCode::InvalidTag, where + "invalid label byte " + std::to_string(label));
    require(c.has_value(), ErrorCode::InvalidTag, where + "invalid capability byte " + std::to_string(capability));
    require(s.has_value(), ErrorCode::InvalidTag, where + "invalid semantics byte " + std::to_string(semantics));
    require(reserved == 0, ErrorCode::InvalidTag, where + "reserved byte must be 0");
    t.label = *l;
    t.capability = *c;
    t.semantics = *s;

    const std::uint32_t n_tokens = in.u32();
    require(n_tokens >= 1, ErrorCode::EmptyResponse, where + "token count is 0");
    require(n_tokens <= in.remaining() / token_bytes, ErrorCode::Truncated, where + "file truncated in token block");
    t.tokens.resize(n_tokens);
    for (auto& tok : t.tokens) {
      tok.token_id = in.u32();
      tok.features.values.resize(set.feature_dim);
      for (double& v : tok.features.values) v = in.f32();
    }
    set.traces.push_back(std::move(t));
  }
  check_tail(in);
  return set;
}

// --- files ----------------------------------------------------------------------

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  require(!f.bad(), ErrorCode::Io, "read error on " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    require(f.good(), ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f.good()) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      fail(ErrorCode::Io, "write error on " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::Io, "cannot move output into place at " + path.string());
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

FfnParams read_params(const std::filesystem::path& path) { return decode_params(read_file(path)); }

void write_params(const FfnParams& params, const std::filesystem::path& path) {
  write_file_atomic(path, encode_params(params));
}

TraceSet read_traces(const std::filesystem::path& path) { return decode_traces(read_file(path)); }

void write_traces(const TraceSet& set, const std::filesystem::path& path) {
  write_file_atomic(path, encode_traces(set));
}

// --- validation ---------------------------------------------------------------

std::vector<Violation> validate(const FfnParams& params, const TraceSet& set) {
  std::vector<Violation> out;
  try {
    params.validate();
  } catch (const Error& e) {
    out.push_back({ViolationKind::InvalidParams, 0, e.what()});
    return out;
  }
  if (set.feature_dim != params.feature_dim()) {
    out.push_back({ViolationKind::Shape, 0,
                   "traces declare J=" + std::to_string(set.feature_dim) + " but parameters have J=" +
                       std::to_string(params.feature_dim())});
  }
  for (std::size_t r = 0; r < set.traces.size(); ++r) {
    const auto& t = set.traces[r];
    const std::string where = "record " + std::to_string(r) + " (response " + std::to_string(t.response_id) + "): ";
    if (t.tokens.empty()) out.push_back({ViolationKind::EmptyResponse, r, where + "no tokens"});
    bool shape_reported = false;
    for (std::size_t n = 0; n < t.tokens.size(); ++n) {
      const auto& tok = t.tokens[n];
      if (tok.token_id >= params.vocab_size()) {
        out.push_back({ViolationKind::TokenRange, r,
                       where + "token " + std::to_string(n) + " id " + std::to_string(tok.token_id) +
                           " >= vocabulary size " + std::to_string(params.vocab_size())});
      }
      if (tok.features.size() != set.feature_dim && !shape_reported) {
        out.push_back({ViolationKind::Shape, r, where + "feature vector length differs from declared J"});
        shape_reported = true;
      }
      if (!all_finite(tok.features.values)) {
        out.push_back({ViolationKind::NonFinite, r, where + "token " + std::to_string(n) + " has non-finite features"});
      }
    }
  }
  return out;
}

// --- score tables -------------------------------------------------------------

std::string format_scores_csv(std::span<const ScoreRecord> records, const MetricMask& metrics) {
  std::ostringstream os;
  os << kScoresHeader << '\n';
  for (const auto& r : records) {
    os << r.response_id;
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      os << ',';
      if (metrics[m]) os << metric_cell(r, static_cast<Metric>(m));
    }
    os << ',' << static_cast<int>(r.label) << ',' << static_cast<int>(r.capability) << ','
       << static_cast<int>(r.semantics) << ',' << (r.saturated ? 1 : 0) << '\n';
  }
  return os.str();
}

ScoreTable parse_scores_csv(std::string_view text) {
  ScoreTable table;
  table.present.fill(true);
  std::array<bool, kMetricCount> any_present{};

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      require(line == kScoresHeader, ErrorCode::Parse, "unexpected score table header");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;

    const auto cells = split(line, ',');
    require(cells.size() == 11, ErrorCode::Parse,
            "line " + std::to_string(line_no) + ": expected 11 columns, got " + std::to_string(cells.size()));
    ScoreRecord r;
    r.response_id = parse_uint(cells[0], line_no);
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      if (cells[1 + m].empty()) {
        table.present[m] = false;
      } else {
        any_present[m] = true;
        set_metric(r, static_cast<Metric>(m), cells[1 + m], line_no);
      }
    }
    r.label = parse_tag<Label>(cells[7], line_no, label_from_byte);
    r.capability = parse_tag<Capability>(cells[8], line_no, capability_from_byte);
    r.semantics = parse_tag<Semantics>(cells[9], line_no, semantics_from_byte);
    const std::uint64_t sat = parse_uint(cells[10], line_no);
    require(sat <= 1, ErrorCode::Parse, "line " + std::to_string(line_no) + ": saturated must be 0 or 1");
    r.saturated = sat == 1;
    table.records.push_back(r);
  }
  require(header_seen, ErrorCode::Parse, "score table is empty");
  for (std::size_t m = 0; m < kMetricCount; ++m) {
    require(table.present[m] || !any_present[m], ErrorCode::Parse,
            "column " + std::string(to_string(static_cast<Metric>(m))) + " is only partially filled");
  }
  return table;
}

ScoreTable read_scores_csv(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_scores_csv(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace evc::io
