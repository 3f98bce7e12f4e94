#include "pud/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace pud {

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;
  std::string line;

  // Skips blank lines and `# ...` comments but returns `#bundle`/`#set`
  // style directives (no space after the hash).
  bool next() {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (line[first] == '#' && (first + 1 == line.size() || line[first + 1] == ' ')) continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("line " + std::to_string(line_no) + ": " + what);
  }
};

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::int64_t to_int(const LineReader& r, const std::string& s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) r.fail("expected an integer, got '" + s + "'");
  return v;
}

Day to_day(const LineReader& r, const std::string& s) {
  if (s == "inf") return kEndOfHorizon;
  auto v = to_int(r, s);
  if (v < 1 || v >= kEndOfHorizon) r.fail("day out of range: " + s);
  return static_cast<Day>(v);
}

Kind to_kind(const LineReader& r, const std::string& s) {
  if (s == "I") return Kind::Insert;
  if (s == "D") return Kind::Delete;
  r.fail("expected kind I or D, got '" + s + "'");
}

Payload to_payload(const LineReader& r, const std::vector<std::string>& t, std::size_t from,
                   std::size_t to) {
  Payload p;
  for (std::size_t i = from; i < to; ++i) p.push_back(to_int(r, t[i]));
  return p;
}

void put_payload(std::ostream& out, const Payload& p) {
  for (auto v : p) out << ' ' << v;
}

Prediction parse_prediction(const LineReader& r, const std::vector<std::string>& t) {
  if (t.size() < 3) r.fail("prediction needs `element kind predicted_day`");
  Prediction p;
  p.event.element = to_int(r, t[0]);
  p.event.kind = to_kind(r, t[1]);
  p.day = to_day(r, t[2]);
  p.event.payload = to_payload(r, t, 3, t.size());
  return p;
}

void put_prediction(std::ostream& out, const Prediction& p) {
  out << p.event.element << ' ' << kind_char(p.event.kind) << ' ' << format_day(p.day);
  put_payload(out, p.event.payload);
  out << '\n';
}

}  // namespace

std::string format_day(Day d) { return d == kEndOfHorizon ? "inf" : std::to_string(d); }

std::vector<Prediction> read_predictions(std::istream& in) {
  LineReader r{in, 0, {}};
  std::vector<Prediction> out;
  while (r.next()) {
    auto t = tokens(r.line);
    if (t[0][0] == '#') r.fail("unexpected directive " + t[0]);
    out.push_back(parse_prediction(r, t));
  }
  return out;
}

void write_predictions(std::ostream& out, const std::vector<Prediction>& ps) {
  for (const auto& p : ps) put_prediction(out, p);
}

std::vector<RealEvent> read_stream(std::istream& in) {
  LineReader r{in, 0, {}};
  std::vector<RealEvent> out;
  while (r.next()) {
    auto t = tokens(r.line);
    if (t.size() < 3) r.fail("stream record needs `day element kind`");
    RealEvent e;
    e.day = to_day(r, t[0]);
    if (e.day == kEndOfHorizon) r.fail("stream day cannot be inf");
    if (!out.empty() && e.day <= out.back().day) r.fail("stream days must increase strictly");
    e.event.element = to_int(r, t[1]);
    e.event.kind = to_kind(r, t[2]);
    e.event.payload = to_payload(r, t, 3, t.size());
    out.push_back(std::move(e));
  }
  return out;
}

void write_stream(std::ostream& out, const std::vector<RealEvent>& rs) {
  for (const auto& e : rs) {
    out << e.day << ' ' << e.event.element << ' ' << kind_char(e.event.kind);
    put_payload(out, e.event.payload);
    out << '\n';
  }
}

std::vector<PredictionBundle> read_bundles(std::istream& in) {
  LineReader r{in, 0, {}};
  std::vector<PredictionBundle> out;
  while (r.next()) {
    auto t = tokens(r.line);
    if (t[0] == "#bundle") {
      if (t.size() != 3) r.fail("expected `#bundle <index> <delivery_day>`");
      PredictionBundle b;
      b.index = static_cast<int>(to_int(r, t[1]));
      b.delivery_day = to_day(r, t[2]);
      out.push_back(std::move(b));
      continue;
    }
    if (t[0][0] == '#') r.fail("unexpected directive " + t[0]);
    if (out.empty()) r.fail("prediction before the first #bundle header");
    out.back().predictions.push_back(parse_prediction(r, t));
  }
  return out;
}

void write_bundles(std::ostream& out, const std::vector<PredictionBundle>& bs) {
  for (const auto& b : bs) {
    out << "#bundle " << b.index << ' ' << b.delivery_day << '\n';
    for (const auto& p : b.predictions) put_prediction(out, p);
  }
}

std::vector<DeletionStreamRecord> read_deletion_stream(std::istream& in,
                                                       std::size_t payload_width) {
  LineReader r{in, 0, {}};
  std::vector<DeletionStreamRecord> out;
  while (r.next()) {
    auto t = tokens(r.line);
    if (t.size() < 3) r.fail("record needs `day kind element`");
    DeletionStreamRecord rec;
    rec.day = to_day(r, t[0]);
    if (rec.day == kEndOfHorizon) r.fail("stream day cannot be inf");
    if (!out.empty() && rec.day <= out.back().day) r.fail("stream days must increase strictly");
    rec.event.kind = to_kind(r, t[1]);
    rec.event.element = to_int(r, t[2]);
    if (rec.event.kind == Kind::Insert) {
      if (t.size() != 4 + payload_width) r.fail("insertion needs payload and predicted deletion day");
      rec.event.payload = to_payload(r, t, 3, 3 + payload_width);
      rec.predicted_deletion = to_day(r, t.back());
    } else if (t.size() != 3) {
      r.fail("deletion takes no extra fields");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void write_deletion_stream(std::ostream& out, const std::vector<DeletionStreamRecord>& rs) {
  for (const auto& rec : rs) {
    out << rec.day << ' ' << kind_char(rec.event.kind) << ' ' << rec.event.element;
    if (rec.event.kind == Kind::Insert) {
      put_payload(out, rec.event.payload);
      out << ' ' << format_day(rec.predicted_deletion);
    }
    out << '\n';
  }
}

InsertionInstance read_insertion_instance(std::istream& in) {
  LineReader r{in, 0, {}};
  InsertionInstance inst;
  enum { kNone, kSet, kStream } section = kNone;
  while (r.next()) {
    auto t = tokens(r.line);
    if (t[0] == "#set") { section = kSet; continue; }
    if (t[0] == "#stream") { section = kStream; continue; }
    if (t[0][0] == '#') r.fail("unexpected directive " + t[0]);
    if (section == kSet) {
      if (t.size() < 2) r.fail("ground-set line needs `element predicted_insertion_day`");
      InsertionInstance::Member m;
      m.element = to_int(r, t[0]);
      m.predicted_insertion = to_day(r, t[1]);
      m.payload = to_payload(r, t, 2, t.size());
      inst.ground.push_back(std::move(m));
    } else if (section == kStream) {
      if (t.size() < 3) r.fail("record needs `day kind element`");
      InsertionInstance::Record rec;
      rec.day = to_day(r, t[0]);
      if (rec.day == kEndOfHorizon) r.fail("stream day cannot be inf");
      if (!inst.stream.empty() && rec.day <= inst.stream.back().day)
        r.fail("stream days must increase strictly");
      rec.event.kind = to_kind(r, t[1]);
      rec.event.element = to_int(r, t[2]);
      if (rec.event.kind == Kind::Insert) {
        rec.event.payload = to_payload(r, t, 3, t.size());
      } else if (t.size() == 4) {
        rec.predicted_reinsertion = to_day(r, t[3]);
      } else if (t.size() != 3) {
        r.fail("deletion takes at most a reinsertion day");
      }
      inst.stream.push_back(std::move(rec));
    } else {
      r.fail("expected #set before records");
    }
  }
  return inst;
}

void write_insertion_instance(std::ostream& out, const InsertionInstance& inst) {
  out << "#set\n";
  for (const auto& m : inst.ground) {
    out << m.element << ' ' << format_day(m.predicted_insertion);
    put_payload(out, m.payload);
    out << '\n';
  }
  out << "#stream\n";
  for (const auto& rec : inst.stream) {
    out << rec.day << ' ' << kind_char(rec.event.kind) << ' ' << rec.event.element;
    if (rec.event.kind == Kind::Insert) {
      put_payload(out, rec.event.payload);
    } else if (rec.predicted_reinsertion != kEndOfHorizon) {
      out << ' ' << rec.predicted_reinsertion;
    }
    out << '\n';
  }
}

std::optional<std::string> read_sidecar(std::istream& in, const std::string& key) {
  std::string line;
  const std::string prefix = "# " + key + "=";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return std::nullopt;
}

}  // namespace pud
