#include "semrec/ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace semrec {

namespace {

constexpr const char* kRatingsHeader = "user,item,attribute,score";
constexpr const char* kConceptsHeader = "item,concept";

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

// streambuf over zlib's gzFile so .gz inputs read like plain text.
class GzStreamBuf : public std::streambuf {
public:
    explicit GzStreamBuf(const std::string& path) : file_(gzopen(path.c_str(), "rb")) {
        if (!file_) throw IoError("cannot open '" + path + "'");
        setg(buf_, buf_, buf_);
    }
    ~GzStreamBuf() override {
        if (file_) gzclose(file_);
    }
    GzStreamBuf(const GzStreamBuf&) = delete;
    GzStreamBuf& operator=(const GzStreamBuf&) = delete;

protected:
    int_type underflow() override {
        if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
        int n = gzread(file_, buf_, sizeof(buf_));
        if (n <= 0) return traits_type::eof();
        setg(buf_, buf_, buf_ + n);
        return traits_type::to_int_type(*gptr());
    }

private:
    gzFile file_;
    char buf_[1 << 15];
};

class GzInputStream : public std::istream {
public:
    explicit GzInputStream(const std::string& path) : std::istream(nullptr), buf_(path) {
        rdbuf(&buf_);
    }

private:
    GzStreamBuf buf_;
};

// Yields trimmed data lines with their 1-based line numbers, skipping blank
// lines, comments and an optional header.
template <typename Fn>
void for_each_data_line(std::istream& in, const char* header, Fn&& fn) {
    std::string line;
    std::size_t lineno = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!seen_data && t == header) {
            seen_data = true;
            continue;
        }
        seen_data = true;
        fn(lineno, t);
    }
}

}  // namespace

RatingsStore parse_ratings(std::istream& in, RatingScale scale, int attribute_count) {
    RatingsStore store(scale, attribute_count);
    for_each_data_line(in, kRatingsHeader, [&](std::size_t lineno, const std::string& line) {
        std::vector<std::string> f = split_fields(line);
        if (f.size() != 4)
            throw ParseError(lineno, "expected 4 fields user,item,attribute,score, got " +
                                         std::to_string(f.size()));
        if (f[0].empty() || f[1].empty()) throw ParseError(lineno, "empty user or item id");
        int attribute = 0;
        if (!parse_int(f[2], attribute)) throw ParseError(lineno, "non-integer attribute id '" + f[2] + "'");
        double score = 0.0;
        if (!parse_double(f[3], score)) throw ParseError(lineno, "non-numeric score '" + f[3] + "'");
        try {
            store.add(f[0], f[1], attribute, score);
        } catch (const ValidationError& e) {
            throw ParseError(lineno, e.what());
        }
    });
    store.finalize();
    return store;
}

ConceptCatalog parse_concepts(std::istream& in) {
    ConceptCatalog catalog;
    for_each_data_line(in, kConceptsHeader, [&](std::size_t lineno, const std::string& line) {
        std::vector<std::string> f = split_fields(line);
        if (f.size() != 2)
            throw ParseError(lineno, "expected 2 fields item,concept, got " + std::to_string(f.size()));
        if (f[0].empty() || f[1].empty()) throw ParseError(lineno, "empty item or concept id");
        catalog.add(f[0], f[1]);
    });
    return catalog;
}

ValidationReport validate(const RatingsStore& store, const ConceptCatalog& catalog) {
    ValidationReport report;
    report.user_count = store.user_count();
    report.item_count = store.item_count();
    report.record_count = store.record_count();
    report.duplicate_count = store.duplicate_count();

    for (std::size_t i = 0; i < store.item_count(); ++i) {
        if (catalog.has_item(store.item_id(static_cast<int>(i))))
            ++report.annotated_item_count;
        else
            report.unannotated_items.push_back(store.item_id(static_cast<int>(i)));
    }
    std::sort(report.unannotated_items.begin(), report.unannotated_items.end());

    for (std::size_t u = 0; u < store.user_count(); ++u) {
        for (AttributeId a = 1; a <= store.attribute_count(); ++a) {
            double lo = 0.0, hi = 0.0;
            std::size_t n = 0;
            for (const auto& r : store.ratings_of_user(static_cast<int>(u))) {
                if (r.attribute != a) continue;
                if (n == 0) {
                    lo = hi = r.score;
                } else {
                    lo = std::min(lo, r.score);
                    hi = std::max(hi, r.score);
                }
                ++n;
            }
            if (n > 0 && lo == hi)
                report.zero_variance_users[a].push_back(store.user_id(static_cast<int>(u)));
        }
    }
    for (auto& [a, users] : report.zero_variance_users) std::sort(users.begin(), users.end());
    return report;
}

std::unique_ptr<std::istream> open_input(const std::string& path) {
    if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0)
        return std::make_unique<GzInputStream>(path);
    auto f = std::make_unique<std::ifstream>(path);
    if (!*f) throw IoError("cannot open '" + path + "'");
    return f;
}

RatingsStore load_ratings_file(const std::string& path, RatingScale scale, int attribute_count) {
    auto in = open_input(path);
    return parse_ratings(*in, scale, attribute_count);
}

ConceptCatalog load_concepts_file(const std::string& path) {
    auto in = open_input(path);
    return parse_concepts(*in);
}

namespace {
// Scores print as integers when they are integral, full precision otherwise,
// so serialize(parse(x)) == x for the default 1..5 integer scale.
std::string format_score(double s) {
    if (s == std::floor(s) && std::abs(s) < 1e15) {
        std::ostringstream os;
        os << static_cast<long long>(s);
        return os.str();
    }
    std::ostringstream os;
    os.precision(17);
    os << s;
    return os.str();
}
}  // namespace

void write_ratings(std::ostream& out, const RatingsStore& store) {
    out << kRatingsHeader << "\n";
    for (const RatingRecord& r : store.sorted_records())
        out << r.user << "," << r.item << "," << r.attribute << "," << format_score(r.score) << "\n";
}

void write_concepts(std::ostream& out, const ConceptCatalog& catalog) {
    out << kConceptsHeader << "\n";
    for (const ItemId& item : catalog.item_ids())
        for (const ConceptId& c : catalog.concepts(item)) out << item << "," << c << "\n";
}

std::string format_validation_report(const ValidationReport& report) {
    std::ostringstream os;
    os << "users: " << report.user_count << "\n"
       << "items: " << report.item_count << " (" << report.annotated_item_count << " annotated)\n"
       << "records: " << report.record_count << "\n"
       << "duplicate keys resolved: " << report.duplicate_count << "\n";
    if (report.unannotated_items.empty()) {
        os << "unannotated items: none\n";
    } else {
        os << "unannotated items (" << report.unannotated_items.size() << "):";
        for (const auto& i : report.unannotated_items) os << " " << i;
        os << "\n";
    }
    if (report.zero_variance_users.empty()) {
        os << "zero-variance users: none\n";
    } else {
        for (const auto& [a, users] : report.zero_variance_users) {
            os << "zero-variance users on attribute " << a << " (" << users.size() << "):";
            for (const auto& u : users) os << " " << u;
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace semrec
