#include "ueba/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ueba/timeparse.hpp"

namespace ueba {

const char* const kCanonicalHeader = "user_id,timestamp,event_type,path,ip_address";

std::string csv_escape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

// Reads one logical CSV record (quoted fields may span lines). Returns false
// at EOF with no data consumed.
bool csv_read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int c;
  while ((c = in.get()) != EOF) {
    any = true;
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get();
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += ch;
      }
    } else {
      if (ch == '"') {
        in_quotes = true;
      } else if (ch == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (ch == '\n') {
        break;
      } else if (ch == '\r') {
        // swallow; \r\n handled by the \n branch
      } else {
        field += ch;
      }
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

std::vector<std::string> csv_split_line(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> fields;
  csv_read_record(ss, fields);
  return fields;
}

void write_canonical_csv(const std::vector<UserStream>& streams, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << kCanonicalHeader << "\n";
  for (const auto& s : streams) {
    for (const auto& e : s.events) {
      out << csv_escape(e.user_id) << ',' << format_timestamp(e.timestamp) << ','
          << csv_escape(e.event_type) << ',' << csv_escape(e.path) << ','
          << csv_escape(e.ip_address) << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<UserStream> read_canonical_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);

  std::vector<std::string> fields;
  if (!csv_read_record(in, fields)) throw std::runtime_error("empty file: " + path);

  const std::vector<std::string> expected = {"user_id", "timestamp", "event_type", "path",
                                             "ip_address"};
  if (fields.size() != expected.size()) {
    for (const auto& f : fields) {
      if (std::find(expected.begin(), expected.end(), f) == expected.end())
        throw std::runtime_error("unknown column in " + path + ": " + f);
    }
    throw std::runtime_error("header mismatch in " + path);
  }
  for (size_t i = 0; i < expected.size(); ++i) {
    if (fields[i] != expected[i])
      throw std::runtime_error("unknown column in " + path + ": " + fields[i]);
  }

  std::vector<Event> events;
  size_t line_no = 1;
  while (csv_read_record(in, fields)) {
    ++line_no;
    if (fields.size() == 1 && fields[0].empty()) continue;  // trailing newline
    if (fields.size() != 5)
      throw std::runtime_error(path + ": wrong field count at record " +
                               std::to_string(line_no));
    auto ts = parse_timestamp(fields[1]);
    if (!ts)
      throw std::runtime_error(path + ": bad timestamp at record " + std::to_string(line_no) +
                               ": " + fields[1]);
    Event e;
    e.user_id = std::move(fields[0]);
    e.timestamp = *ts;
    e.event_type = std::move(fields[2]);
    e.path = std::move(fields[3]);
    e.ip_address = std::move(fields[4]);
    events.push_back(std::move(e));
  }
  return group_by_user(std::move(events));
}

std::vector<UserStream> group_by_user(std::vector<Event> events) {
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.user_id != b.user_id) return a.user_id < b.user_id;
    return a.timestamp < b.timestamp;
  });
  std::vector<UserStream> streams;
  for (auto& e : events) {
    if (streams.empty() || streams.back().user_id != e.user_id) {
      streams.push_back(UserStream{e.user_id, {}});
    }
    streams.back().events.push_back(std::move(e));
  }
  return streams;
}

std::vector<Event> flatten(const std::vector<UserStream>& streams) {
  std::vector<Event> out;
  for (const auto& s : streams) out.insert(out.end(), s.events.begin(), s.events.end());
  return out;
}

}  // namespace ueba
