#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ueba/event.hpp"

namespace ueba {

// Canonical event CSV: header `user_id,timestamp,event_type,path,ip_address`,
// comma-delimited, UTF-8, RFC-4180 quoting, ISO-8601 UTC timestamps. The
// round trip write -> read is lossless; unknown columns are a hard error.

extern const char* const kCanonicalHeader;

void write_canonical_csv(const std::vector<UserStream>& streams, const std::string& path);
std::vector<UserStream> read_canonical_csv(const std::string& path);

// Streams sorted by user_id; events per user in canonical order already.
std::vector<UserStream> group_by_user(std::vector<Event> events);
std::vector<Event> flatten(const std::vector<UserStream>& streams);

// RFC-4180 plumbing shared with the feature-matrix writer.
std::string csv_escape(const std::string& field);
std::vector<std::string> csv_split_line(const std::string& line);
bool csv_read_record(std::istream& in, std::vector<std::string>& fields);

}  // namespace ueba
