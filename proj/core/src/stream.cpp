#include "streamcolor/stream.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace streamcolor {

MultiPassSource::Pass::~Pass() {
  if (src_) src_->open_ = false;
}

MultiPassSource::Pass::Pass(Pass&& other) noexcept : src_(other.src_), pos_(other.pos_) {
  other.src_ = nullptr;
}

MultiPassSource MultiPassSource::from_edges(std::span<const Edge> edges) {
  std::vector<StreamToken> tokens;
  tokens.reserve(edges.size());
  for (const Edge& e : edges) tokens.push_back(StreamToken::edge_token(e.u, e.v));
  return MultiPassSource(std::move(tokens));
}

MultiPassSource MultiPassSource::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open stream file: " + path);
  return MultiPassSource(read_token_file(in));
}

MultiPassSource::Pass MultiPassSource::open_pass() {
  if (open_) throw UsageError("open_pass: a pass is already open on this source");
  open_ = true;
  ++pass_count_;
  return Pass(this);
}

std::vector<StreamToken> read_token_file(std::istream& in) {
  std::vector<StreamToken> tokens;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    char tag;
    ls >> tag;
    if (tag == 'E') {
      std::uint64_t a, b;
      if (!(ls >> a >> b)) throw InputError("bad edge record at line " + std::to_string(lineno));
      tokens.push_back(StreamToken::edge_token(static_cast<VertexId>(a), static_cast<VertexId>(b)));
    } else if (tag == 'L') {
      std::uint64_t x, k;
      if (!(ls >> x >> k)) throw InputError("bad list record at line " + std::to_string(lineno));
      std::vector<ColorId> colors(k);
      for (std::uint64_t i = 0; i < k; ++i) {
        std::uint64_t c;
        if (!(ls >> c)) throw InputError("short list record at line " + std::to_string(lineno));
        colors[i] = static_cast<ColorId>(c);
      }
      tokens.push_back(StreamToken::list_token(static_cast<VertexId>(x), std::move(colors)));
    } else if (tag == 'Q') {
      tokens.push_back(StreamToken::query_token());
    } else {
      throw InputError("unknown record tag '" + std::string(1, tag) + "' at line " +
                       std::to_string(lineno));
    }
  }
  return tokens;
}

void write_token_file(std::ostream& out, std::span<const StreamToken> tokens) {
  for (const StreamToken& t : tokens) {
    switch (t.kind) {
      case StreamToken::Kind::edge:
        out << "E " << t.u << ' ' << t.v << '\n';
        break;
      case StreamToken::Kind::list: {
        out << "L " << t.u << ' ' << t.list.size();
        for (ColorId c : t.list) out << ' ' << c;
        out << '\n';
        break;
      }
      case StreamToken::Kind::query:
        out << "Q\n";
        break;
    }
  }
}

const char* space_category_name(SpaceCategory c) {
  switch (c) {
    case SpaceCategory::stored_edges: return "stored_edges";
    case SpaceCategory::counters: return "counters";
    case SpaceCategory::hash_descriptions: return "hash_descriptions";
    case SpaceCategory::accumulators: return "accumulators";
    case SpaceCategory::derived_cache: return "derived_cache";
  }
  return "?";
}

void SpaceMeter::charge(SpaceCategory cat, std::int64_t delta_words) {
  auto& slot = current_[static_cast<std::size_t>(cat)];
  slot += delta_words;
  if (slot < 0)
    throw AccountingError(std::string("space meter went negative in category ") +
                          space_category_name(cat));
  const std::int64_t total = current_total();
  peak_ = std::max(peak_, total);
  peak_no_cache_ =
      std::max(peak_no_cache_, total - current_[static_cast<std::size_t>(SpaceCategory::derived_cache)]);
}

std::int64_t SpaceMeter::current_total() const {
  std::int64_t t = 0;
  for (std::int64_t v : current_) t += v;
  return t;
}

}  // namespace streamcolor
