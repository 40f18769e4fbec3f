#include "moodcast/catalog.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "moodcast/csv.hpp"
#include "moodcast/error.hpp"
#include "moodcast/text.hpp"

namespace moodcast {
namespace {

void check_entry(const SongEntry& s, std::size_t row, std::set<std::string>& ids) {
  const auto where = "catalog row " + std::to_string(row);
  if (s.id.empty()) throw ValidationError(where + ": empty id");
  if (!(s.valence >= 0.0 && s.valence <= 1.0)) throw ValidationError(where + ": valence outside [0,1]");
  if (!(s.energy >= 0.0 && s.energy <= 1.0)) throw ValidationError(where + ": energy outside [0,1]");
  if (!(s.popularity >= 0.0 && s.popularity <= 100.0)) throw ValidationError(where + ": popularity outside [0,100]");
  if (!ids.insert(s.id).second) throw ValidationError(where + ": duplicate id '" + s.id + "'");
}

double parse_real(const std::string& field, std::size_t row, const char* name) {
  const auto t = trim(field);
  double v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ValidationError("catalog row " + std::to_string(row) + ": " + name + " is not a number");
  }
  return v;
}

}  // namespace

nlohmann::json to_json(const SongEntry& s) {
  return {{"id", s.id}, {"title", s.title}, {"valence", s.valence}, {"energy", s.energy}, {"popularity", s.popularity}};
}

std::vector<SongEntry> parse_song_catalog_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("catalog is not valid JSON: ") + e.what(), std::string(text.substr(0, 200)));
  }
  if (!j.is_array()) throw ValidationError("catalog JSON must be an array");
  std::vector<SongEntry> out;
  std::set<std::string> ids;
  std::size_t row = 0;
  for (const auto& e : j) {
    ++row;
    SongEntry s;
    try {
      s.id = e.at("id").is_string() ? e.at("id").get<std::string>() : e.at("id").dump();
      s.title = e.value("title", std::string());
      s.valence = e.at("valence").get<double>();
      s.energy = e.at("energy").get<double>();
      s.popularity = e.at("popularity").get<double>();
    } catch (const nlohmann::json::exception& ex) {
      throw ValidationError("catalog row " + std::to_string(row) + ": " + ex.what());
    }
    check_entry(s, row, ids);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SongEntry> parse_song_catalog_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) return {};
  const std::vector<std::string> expected = {"id", "title", "valence", "energy", "popularity"};
  std::vector<std::string> header;
  for (const auto& h : rows[0]) header.push_back(to_lower(trim(h)));
  if (header != expected) throw ValidationError("catalog CSV header must be id,title,valence,energy,popularity");
  std::vector<SongEntry> out;
  std::set<std::string> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() != expected.size()) {
      throw ValidationError("catalog row " + std::to_string(r) + ": expected 5 fields, got " + std::to_string(f.size()));
    }
    SongEntry s{trim(f[0]), trim(f[1]), parse_real(f[2], r, "valence"), parse_real(f[3], r, "energy"),
                parse_real(f[4], r, "popularity")};
    check_entry(s, r, ids);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SongEntry> load_song_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("catalog file not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto text = ss.str();
  if (trim(text).empty()) return {};
  const auto ext = to_lower(path.extension().string());
  if (ext == ".json") return parse_song_catalog_json(text);
  if (ext == ".csv") return parse_song_catalog_csv(text);
  const auto t = trim(text);
  return t.front() == '[' ? parse_song_catalog_json(t) : parse_song_catalog_csv(t);
}

const SongEntry* find_song(const std::vector<SongEntry>& catalog, std::string_view id) {
  for (const auto& s : catalog) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

}  // namespace moodcast
