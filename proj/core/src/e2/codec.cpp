#include "orion/e2/codec.hpp"

#include <limits>
#include <string>

#include "orion/error.hpp"

namespace orion::e2 {

Discipline discipline_for(model::SliceType type) noexcept {
  return type == model::SliceType::urllc ? Discipline::earliest_deadline_first
                                         : Discipline::proportional_fair;
}

MessageType ControlPdu::type() const noexcept {
  switch (body.index()) {
    case 0: return MessageType::setup_request;
    case 1: return MessageType::setup_response;
    case 2: return MessageType::control_request;
    case 3: return MessageType::control_acknowledge;
    default: return MessageType::control_failure;
  }
}

namespace {

[[noreturn]] void range_error(const std::string& what) { throw Error(Errc::field_range_error, what); }
[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::malformed_frame, what); }

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
  void bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }

  // Writes tag + placeholder length; the returned mark is closed by end_tlv.
  std::size_t begin_tlv(std::uint8_t t) {
    u8(t);
    u16(0);
    return out_.size();
  }
  void end_tlv(std::size_t mark) {
    auto len = out_.size() - mark;
    if (len > std::numeric_limits<std::uint16_t>::max()) range_error("TLV value exceeds 65535 bytes");
    out_[mark - 2] = static_cast<std::uint8_t>(len >> 8);
    out_[mark - 1] = static_cast<std::uint8_t>(len);
  }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::size_t remaining() const { return in_.size() - pos_; }
  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>((in_[pos_] << 8) | in_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_ + i];
    pos_ += 4;
    return v;
  }
  std::string str(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) malformed("truncated payload");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void check_ratio(std::uint8_t v, const char* name) {
  if (v > 100) range_error(std::string(name) + " ratio " + std::to_string(v) + " exceeds 100");
}

void write_slice(Writer& w, const model::SliceId& s) {
  if (auto err = model::check_slice_id(s)) range_error(*err);
  auto mark = w.begin_tlv(tag::slice);
  w.u8(s.sst);
  for (int i = 0; i < 3; ++i) w.u8(static_cast<std::uint8_t>(std::stoi(s.sd.substr(i * 2, 2), nullptr, 16)));
  w.bytes(s.plmn_mcc);
  w.bytes(s.plmn_mnc);
  if (s.plmn_mnc.size() == 2) w.bytes("F");
  w.u32(s.nci);
  w.end_tlv(mark);
}

model::SliceId read_slice(Reader& r) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  model::SliceId s;
  s.sst = r.u8();
  s.sd.clear();
  for (int i = 0; i < 3; ++i) {
    auto b = r.u8();
    s.sd.push_back(kHex[b >> 4]);
    s.sd.push_back(kHex[b & 0x0F]);
  }
  auto plmn = r.str(6);
  s.plmn_mcc = plmn.substr(0, 3);
  s.plmn_mnc = plmn[5] == 'F' ? plmn.substr(3, 2) : plmn.substr(3, 3);
  s.nci = r.u32();
  if (auto err = model::check_slice_id(s)) range_error(*err);
  return s;
}

void write_string(Writer& w, std::uint8_t t, const std::string& s) {
  auto mark = w.begin_tlv(t);
  w.bytes(s);
  w.end_tlv(mark);
}

void write_u8(Writer& w, std::uint8_t t, std::uint8_t v) {
  auto mark = w.begin_tlv(t);
  w.u8(v);
  w.end_tlv(mark);
}

void write_u16(Writer& w, std::uint8_t t, std::uint16_t v) {
  auto mark = w.begin_tlv(t);
  w.u16(v);
  w.end_tlv(mark);
}

void write_body(Writer& w, const SetupRequest& m) {
  write_string(w, tag::node_id, m.node_id);
  for (const auto& f : m.functions) {
    auto mark = w.begin_tlv(tag::function);
    w.u16(f.function_id);
    w.u8(f.style);
    w.u8(f.action);
    w.end_tlv(mark);
  }
  if (m.cell) {
    const auto& c = *m.cell;
    if (c.node_id != m.node_id) range_error("cell config node_id differs from setup node_id");
    if (c.bandwidth_hz < 0 || c.bandwidth_hz > std::numeric_limits<std::uint32_t>::max()) {
      range_error("bandwidth_hz does not fit in 32 bits");
    }
    auto in_u8 = [](int v, const char* name) {
      if (v < 0 || v > 255) range_error(std::string(name) + " does not fit in one octet");
      return static_cast<std::uint8_t>(v);
    };
    if (c.n_prb < 0 || c.n_prb > 65535) range_error("n_prb does not fit in 16 bits");
    auto mark = w.begin_tlv(tag::cell_config);
    w.u32(static_cast<std::uint32_t>(c.bandwidth_hz));
    w.u8(in_u8(c.numerology_mu, "numerology"));
    w.u8(in_u8(c.mimo_layers, "mimo_layers"));
    w.u8(in_u8(c.modulation_bits, "modulation_bits"));
    w.u16(static_cast<std::uint16_t>(c.n_prb));
    w.u32(c.overhead_ppm);
    w.u32(c.nci);
    w.end_tlv(mark);
  }
}

void write_body(Writer& w, const SetupResponse& m) {
  for (auto id : m.accepted_functions) write_u16(w, tag::ran_function, id);
}

void write_body(Writer& w, const ControlRequest& m) {
  check_ratio(m.ratios.min, "min");
  check_ratio(m.ratios.dedicated, "dedicated");
  check_ratio(m.ratios.max, "max");
  write_u16(w, tag::ran_function, m.ran_function_id);
  write_u8(w, tag::style, m.style);
  write_u8(w, tag::action_id, m.action_id);
  write_slice(w, m.slice);
  auto mark = w.begin_tlv(tag::ratios);
  w.u8(m.ratios.min);
  w.u8(m.ratios.dedicated);
  w.u8(m.ratios.max);
  w.end_tlv(mark);
  write_u8(w, tag::discipline, static_cast<std::uint8_t>(m.discipline));
}

void write_body(Writer& w, const ControlAcknowledge& m) { write_u16(w, tag::ran_function, m.ran_function_id); }

void write_body(Writer& w, const ControlFailure& m) {
  write_u8(w, tag::cause, static_cast<std::uint8_t>(m.cause));
  write_string(w, tag::detail, m.detail);
}

// Collected TLVs of one payload. Non-repeatable tags may appear once.
struct Fields {
  std::optional<std::string> node_id;
  std::vector<FunctionAdvert> functions;
  std::optional<model::CellConfig> cell;
  std::vector<std::uint16_t> ran_functions;
  std::optional<std::uint8_t> style;
  std::optional<std::uint8_t> action_id;
  std::optional<model::SliceId> slice;
  std::optional<RatioTriple> ratios;
  std::optional<std::uint8_t> discipline;
  std::optional<std::uint8_t> cause;
  std::optional<std::string> detail;
};

template <typename T>
void set_once(std::optional<T>& slot, T value, const char* name) {
  if (slot) malformed(std::string("duplicate ") + name + " field");
  slot = std::move(value);
}

void expect_len(std::size_t len, std::size_t want, const char* name) {
  if (len != want) malformed(std::string(name) + " field has wrong length");
}

Fields read_fields(Reader& r) {
  Fields f;
  while (r.remaining() > 0) {
    if (r.remaining() < 3) malformed("trailing bytes after last field");
    auto t = r.u8();
    auto len = r.u16();
    Reader v(r.take(len));
    switch (t) {
      case tag::node_id: set_once(f.node_id, v.str(len), "node_id"); break;
      case tag::function: {
        expect_len(len, 4, "function");
        FunctionAdvert a;
        a.function_id = v.u16();
        a.style = v.u8();
        a.action = v.u8();
        f.functions.push_back(a);
        break;
      }
      case tag::cell_config: {
        expect_len(len, 17, "cell_config");
        model::CellConfig c;
        c.bandwidth_hz = v.u32();
        c.numerology_mu = v.u8();
        c.mimo_layers = v.u8();
        c.modulation_bits = v.u8();
        c.n_prb = v.u16();
        c.overhead_ppm = v.u32();
        c.nci = v.u32();
        set_once(f.cell, std::move(c), "cell_config");
        break;
      }
      case tag::ran_function:
        expect_len(len, 2, "ran_function");
        f.ran_functions.push_back(v.u16());
        break;
      case tag::style: expect_len(len, 1, "style"); set_once(f.style, v.u8(), "style"); break;
      case tag::action_id: expect_len(len, 1, "action_id"); set_once(f.action_id, v.u8(), "action_id"); break;
      case tag::slice: expect_len(len, 14, "slice"); set_once(f.slice, read_slice(v), "slice"); break;
      case tag::ratios: {
        expect_len(len, 3, "ratios");
        RatioTriple t3;
        t3.min = v.u8();
        t3.dedicated = v.u8();
        t3.max = v.u8();
        check_ratio(t3.min, "min");
        check_ratio(t3.dedicated, "dedicated");
        check_ratio(t3.max, "max");
        set_once(f.ratios, t3, "ratios");
        break;
      }
      case tag::discipline:
        expect_len(len, 1, "discipline");
        set_once(f.discipline, v.u8(), "discipline");
        break;
      case tag::cause: expect_len(len, 1, "cause"); set_once(f.cause, v.u8(), "cause"); break;
      case tag::detail: set_once(f.detail, v.str(len), "detail"); break;
      default: break;  // forward compatibility
    }
  }
  return f;
}

template <typename T>
const T& required(const std::optional<T>& v, const char* name) {
  if (!v) malformed(std::string("missing ") + name + " field");
  return *v;
}

PduBody build_body(MessageType type, Fields& f) {
  switch (type) {
    case MessageType::setup_request: {
      SetupRequest m;
      m.node_id = required(f.node_id, "node_id");
      m.functions = std::move(f.functions);
      if (f.cell) {
        m.cell = std::move(f.cell);
        m.cell->node_id = m.node_id;
      }
      return m;
    }
    case MessageType::setup_response: return SetupResponse{std::move(f.ran_functions)};
    case MessageType::control_request: {
      ControlRequest m;
      if (f.ran_functions.size() != 1) malformed("control request needs exactly one ran_function field");
      m.ran_function_id = f.ran_functions.front();
      m.style = required(f.style, "style");
      m.action_id = required(f.action_id, "action_id");
      m.slice = required(f.slice, "slice");
      m.ratios = required(f.ratios, "ratios");
      auto d = required(f.discipline, "discipline");
      if (d != 0x01 && d != 0x02) range_error("unknown discipline " + std::to_string(d));
      m.discipline = static_cast<Discipline>(d);
      return m;
    }
    case MessageType::control_acknowledge: {
      if (f.ran_functions.size() != 1) malformed("acknowledge needs exactly one ran_function field");
      return ControlAcknowledge{f.ran_functions.front()};
    }
    case MessageType::control_failure: {
      auto c = required(f.cause, "cause");
      if (c < 0x01 || c > 0x03) range_error("unknown cause " + std::to_string(c));
      return ControlFailure{static_cast<FailureCause>(c), f.detail.value_or("")};
    }
  }
  throw Error(Errc::unknown_message_type, "unreachable");
}

}  // namespace

std::vector<std::uint8_t> encode(const ControlPdu& pdu) {
  Writer w;
  w.u16(kMagic);
  w.u8(kVersion);
  w.u8(static_cast<std::uint8_t>(pdu.type()));
  w.u32(pdu.transaction_id);
  std::visit([&](const auto& body) { write_body(w, body); }, pdu.body);
  return w.take();
}

ControlPdu decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) malformed("payload shorter than header");
  Reader r(bytes);
  if (r.u16() != kMagic) malformed("bad magic");
  if (r.u8() != kVersion) malformed("unsupported version");
  auto raw_type = r.u8();
  if (raw_type < 0x01 || raw_type > 0x05) {
    throw Error(Errc::unknown_message_type, "message type " + std::to_string(raw_type));
  }
  ControlPdu pdu;
  pdu.transaction_id = r.u32();
  auto fields = read_fields(r);
  pdu.body = build_body(static_cast<MessageType>(raw_type), fields);
  return pdu;
}

std::vector<std::uint8_t> frame(std::span<const std::uint8_t> payload) {
  if (payload.size() > kMaxFrameSize) {
    throw Error(Errc::frame_too_large, std::to_string(payload.size()) + " bytes exceeds 64 KiB");
  }
  std::vector<std::uint8_t> out;
  out.reserve(payload.size() + 4);
  auto n = static_cast<std::uint32_t>(payload.size());
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(n >> shift));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

}  // namespace orion::e2
