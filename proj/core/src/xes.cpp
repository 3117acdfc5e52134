#include "mpdc/xes.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace mpdc {
namespace {

// Minimal XML pull parser for the XES subset: elements, attributes,
// comments, prolog, CDATA-free text (ignored). Tracks line/column for
// diagnostics.
class XmlReader {
 public:
  struct StartTag {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    bool self_closing = false;

    const std::string* attr(const std::string& key) const {
      for (const auto& [k, v] : attributes)
        if (k == key) return &v;
      return nullptr;
    }
  };

  explicit XmlReader(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    text_ = buf.str();
  }

  // Advances to the next start or end tag. Returns false at end of input.
  // On a start tag fills `tag`; on an end tag sets `end_name`.
  bool next(StartTag& tag, std::string& end_name) {
    for (;;) {
      skip_until('<');
      if (pos_ >= text_.size()) return false;
      advance();  // consume '<'
      if (lookahead("!--")) {
        skip_comment();
        continue;
      }
      if (lookahead("?")) {
        skip_until('>');
        advance();
        continue;
      }
      if (lookahead("!")) {
        skip_until('>');
        advance();
        continue;
      }
      if (cur() == '/') {
        advance();
        end_name = read_name();
        skip_ws();
        expect('>');
        tag = {};
        return true;
      }
      tag = read_start_tag();
      end_name.clear();
      return true;
    }
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("XML: " + msg, line_, col_);
  }

  char cur() const {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    return text_[pos_];
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 0;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool lookahead(const std::string& s) const { return text_.compare(pos_, s.size(), s) == 0; }

  void skip_until(char c) {
    while (pos_ < text_.size() && text_[pos_] != c) advance();
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void skip_comment() {
    pos_ += 3;  // "!--"
    std::size_t end = text_.find("-->", pos_);
    if (end == std::string::npos) fail("unterminated comment");
    while (pos_ < end + 3) advance();
  }

  void expect(char c) {
    if (cur() != c) fail(std::string("expected '") + c + "', found '" + cur() + "'");
    advance();
  }

  std::string read_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '-' || c == '_' || c == '.')
        advance();
      else
        break;
    }
    if (pos_ == start) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  std::string decode_entities(const std::string& s) {
    if (s.find('&') == std::string::npos) return s;
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '&') {
        out.push_back(s[i]);
        continue;
      }
      std::size_t semi = s.find(';', i);
      if (semi == std::string::npos) fail("malformed entity");
      std::string ent = s.substr(i + 1, semi - i - 1);
      if (ent == "amp") out.push_back('&');
      else if (ent == "lt") out.push_back('<');
      else if (ent == "gt") out.push_back('>');
      else if (ent == "quot") out.push_back('"');
      else if (ent == "apos") out.push_back('\'');
      else if (!ent.empty() && ent[0] == '#') {
        int code = std::stoi(ent.substr(ent[1] == 'x' ? 2 : 1), nullptr, ent[1] == 'x' ? 16 : 10);
        out.push_back(static_cast<char>(code));
      } else fail("unknown entity '&" + ent + ";'");
      i = semi;
    }
    return out;
  }

  StartTag read_start_tag() {
    StartTag tag;
    tag.name = read_name();
    for (;;) {
      skip_ws();
      char c = cur();
      if (c == '>') {
        advance();
        return tag;
      }
      if (c == '/') {
        advance();
        expect('>');
        tag.self_closing = true;
        return tag;
      }
      std::string key = read_name();
      skip_ws();
      expect('=');
      skip_ws();
      char quote = cur();
      if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
      advance();
      std::size_t start = pos_;
      while (cur() != quote) advance();
      std::string value = text_.substr(start, pos_ - start);
      advance();
      tag.attributes.emplace_back(std::move(key), decode_entities(value));
    }
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 0;
};

// days from 1970-01-01 for a civil date (Howard Hinnant's algorithm)
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yr + (m <= 2));
}

struct XesAttribute {
  std::string key;
  AttributeValue value;
};

bool parse_attribute_element(const XmlReader::StartTag& tag, XesAttribute& out) {
  const std::string* key = tag.attr("key");
  const std::string* value = tag.attr("value");
  if (!key || !value) return false;
  out.key = *key;
  if (tag.name == "string") {
    out.value = *value;
  } else if (tag.name == "int") {
    out.value = static_cast<std::int64_t>(std::stoll(*value));
  } else if (tag.name == "float") {
    out.value = std::stod(*value);
  } else if (tag.name == "boolean") {
    out.value = (*value == "true");
  } else if (tag.name == "date") {
    out.value = Timestamp{parse_iso8601(*value)};
  } else {
    return false;
  }
  return true;
}

}  // namespace

std::int64_t parse_iso8601(const std::string& text) {
  // YYYY-MM-DDTHH:MM:SS[.fraction][Z|+HH:MM|-HH:MM]
  int y = 0, hh = 0, mm = 0, ss = 0;
  unsigned mo = 0, dd = 0;
  const char* p = text.c_str();
  const char* end = p + text.size();
  auto read_int = [&](int digits, int& out) {
    out = 0;
    for (int i = 0; i < digits; ++i) {
      if (p >= end || !std::isdigit(static_cast<unsigned char>(*p)))
        throw ParseError("malformed ISO-8601 timestamp '" + text + "'");
      out = out * 10 + (*p++ - '0');
    }
  };
  auto expect_char = [&](char c) {
    if (p >= end || *p != c) throw ParseError("malformed ISO-8601 timestamp '" + text + "'");
    ++p;
  };
  int tmp = 0;
  read_int(4, y);
  expect_char('-');
  read_int(2, tmp); mo = static_cast<unsigned>(tmp);
  expect_char('-');
  read_int(2, tmp); dd = static_cast<unsigned>(tmp);
  if (p < end && (*p == 'T' || *p == ' ')) ++p;
  read_int(2, hh);
  expect_char(':');
  read_int(2, mm);
  expect_char(':');
  read_int(2, ss);

  std::int64_t millis = 0;
  if (p < end && *p == '.') {
    ++p;
    int scale = 100;
    while (p < end && std::isdigit(static_cast<unsigned char>(*p))) {
      if (scale > 0) millis += (*p - '0') * scale;
      scale /= 10;
      ++p;
    }
  }

  std::int64_t offset_minutes = 0;
  if (p < end) {
    if (*p == 'Z') {
      ++p;
    } else if (*p == '+' || *p == '-') {
      int sign = *p == '-' ? -1 : 1;
      ++p;
      int oh = 0, om = 0;
      read_int(2, oh);
      if (p < end && *p == ':') ++p;
      if (p < end && std::isdigit(static_cast<unsigned char>(*p))) read_int(2, om);
      offset_minutes = sign * (oh * 60 + om);
    }
  }
  if (p != end) throw ParseError("malformed ISO-8601 timestamp '" + text + "'");

  std::int64_t days = days_from_civil(y, mo, dd);
  std::int64_t seconds = days * 86400 + hh * 3600 + mm * 60 + ss - offset_minutes * 60;
  return seconds * 1000 + millis;
}

std::string format_iso8601(std::int64_t epoch_millis) {
  std::int64_t seconds = epoch_millis / 1000;
  std::int64_t millis = epoch_millis % 1000;
  if (millis < 0) {
    millis += 1000;
    --seconds;
  }
  std::int64_t days = seconds / 86400;
  std::int64_t sod = seconds % 86400;
  if (sod < 0) {
    sod += 86400;
    --days;
  }
  int y;
  unsigned mo, dd;
  civil_from_days(days, y, mo, dd);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ", y, mo, dd,
                static_cast<long long>(sod / 3600), static_cast<long long>(sod / 60 % 60),
                static_cast<long long>(sod % 60), static_cast<long long>(millis));
  return buf;
}

EventLog parse_xes(std::istream& input, const XesOptions& options) {
  XmlReader reader(input);
  EventLog log;
  log.source_name = options.source_name;

  XmlReader::StartTag tag;
  std::string end_name;
  std::vector<std::string> stack;  // open container elements: log/trace/event
  Trace* trace = nullptr;
  Event* event = nullptr;
  std::size_t skip_depth = 0;  // inside an unknown element's subtree
  std::size_t anonymous = 0;

  while (reader.next(tag, end_name)) {
    if (!end_name.empty()) {
      if (skip_depth > 0) {
        --skip_depth;
        continue;
      }
      if (!stack.empty() && stack.back() == end_name) {
        if (end_name == "event") event = nullptr;
        if (end_name == "trace") trace = nullptr;
        stack.pop_back();
      }
      continue;
    }

    if (skip_depth > 0) {
      if (!tag.self_closing) ++skip_depth;
      continue;
    }

    if (tag.name == "log") {
      if (!tag.self_closing) stack.push_back("log");
      continue;
    }
    if (tag.name == "trace") {
      log.traces.emplace_back();
      trace = &log.traces.back();
      trace->case_id = "trace_" + std::to_string(++anonymous);
      if (!tag.self_closing) stack.push_back("trace");
      continue;
    }
    if (tag.name == "event") {
      if (!trace) throw ParseError("XES: <event> outside a <trace>", reader.line(), reader.column());
      trace->events.emplace_back();
      event = &trace->events.back();
      event->index = trace->events.size() - 1;
      if (!tag.self_closing) stack.push_back("event");
      continue;
    }

    XesAttribute attr;
    if (parse_attribute_element(tag, attr)) {
      if (event) {
        if (attr.key == "concept:name") {
          // transition suffix is applied when the event element closes;
          // store raw parts in the attribute map meanwhile
          event->activity = std::get<std::string>(attr.value);
        } else if (attr.key == "time:timestamp") {
          event->timestamp = std::get<Timestamp>(attr.value).millis;
          event->attributes["time:timestamp"] = attr.value;  // marker, removed below
        } else if (attr.key == "lifecycle:transition") {
          const std::string& t = std::get<std::string>(attr.value);
          std::string lowered = t;
          for (char& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
          if (lowered != "complete") event->attributes["\x01transition"] = t;
        } else {
          event->attributes[attr.key] = attr.value;
        }
      } else if (trace) {
        if (attr.key == "concept:name") trace->case_id = std::get<std::string>(attr.value);
        else trace->case_attributes[attr.key] = attr.value;
      }
      if (!tag.self_closing) ++skip_depth;  // nested children of attributes ignored
      continue;
    }

    // unknown element (extension, global, classifier, ...): skip subtree
    if (!tag.self_closing) ++skip_depth;
  }

  // finalize events: apply transition suffix, check required fields
  for (auto& t : log.traces) {
    for (auto& e : t.events) {
      auto ts = e.attributes.find("time:timestamp");
      if (ts == e.attributes.end())
        throw ValidationError("XES: event without time:timestamp in trace '" + t.case_id + "'");
      e.attributes.erase(ts);
      if (e.activity.empty())
        throw ValidationError("XES: event without concept:name in trace '" + t.case_id + "'");
      auto tr = e.attributes.find("\x01transition");
      if (tr != e.attributes.end()) {
        e.activity += "-" + std::get<std::string>(tr->second);
        e.attributes.erase(tr);
      }
    }
  }

  if (options.sort_on_load) sort_traces_by_timestamp(log);
  validate_log(log);
  return log;
}

EventLog parse_xes(const std::string& input, const XesOptions& options) {
  std::istringstream is(input);
  return parse_xes(is, options);
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void write_attribute(std::ostream& os, const std::string& indent, const std::string& key,
                     const AttributeValue& value) {
  os << indent;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>)
          os << "<string key=\"" << xml_escape(key) << "\" value=\"" << xml_escape(x) << "\"/>\n";
        else if constexpr (std::is_same_v<T, std::int64_t>)
          os << "<int key=\"" << xml_escape(key) << "\" value=\"" << x << "\"/>\n";
        else if constexpr (std::is_same_v<T, double>) {
          std::ostringstream num;
          num.precision(17);
          num << x;
          os << "<float key=\"" << xml_escape(key) << "\" value=\"" << num.str() << "\"/>\n";
        } else if constexpr (std::is_same_v<T, bool>)
          os << "<boolean key=\"" << xml_escape(key) << "\" value=\"" << (x ? "true" : "false")
             << "\"/>\n";
        else
          os << "<date key=\"" << xml_escape(key) << "\" value=\"" << format_iso8601(x.millis)
             << "\"/>\n";
      },
      value);
}

}  // namespace

void write_xes(const EventLog& log, std::ostream& output) {
  output << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  output << "<log xes.version=\"1.0\">\n";
  for (const auto& trace : log.traces) {
    output << "  <trace>\n";
    write_attribute(output, "    ", "concept:name", AttributeValue{trace.case_id});
    for (const auto& [key, value] : trace.case_attributes)
      write_attribute(output, "    ", key, value);
    for (const auto& event : trace.events) {
      output << "    <event>\n";
      write_attribute(output, "      ", "concept:name", AttributeValue{event.activity});
      write_attribute(output, "      ", "time:timestamp", AttributeValue{Timestamp{event.timestamp}});
      for (const auto& [key, value] : event.attributes)
        write_attribute(output, "      ", key, value);
      output << "    </event>\n";
    }
    output << "  </trace>\n";
  }
  output << "</log>\n";
}

std::string write_xes(const EventLog& log) {
  std::ostringstream os;
  write_xes(log, os);
  return os.str();
}

}  // namespace mpdc
