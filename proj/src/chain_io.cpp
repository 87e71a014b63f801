#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "numeric_util.hpp"
#include "tailprice/errors.hpp"
#include "tailprice/surface.hpp"

namespace tailprice {

using detail::fmt;
using json = nlohmann::json;

namespace {

constexpr std::string_view kCsvHeader = "strike,side,price";

std::optional<double> parse_number(std::string_view text) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<OptionSide> parse_side(std::string_view text) {
    if (text == "C" || text == "c" || text == "call") return OptionSide::Call;
    if (text == "P" || text == "p" || text == "put") return OptionSide::Put;
    return std::nullopt;
}

void validate_quote(const OptionQuote& q, const std::string& where) {
    if (!(q.strike > 0.0)) fail(ErrorKind::Validation, where + ": strike must be positive, got " + fmt(q.strike));
    if (!(q.price >= 0.0)) fail(ErrorKind::Validation, where + ": price must be nonnegative, got " + fmt(q.price));
}

double require_meta(std::optional<double> v, const char* name) {
    if (!v) fail(ErrorKind::Validation, std::string("chain ") + name + " not supplied (use flags or a JSON sidecar)");
    return *v;
}

}  // namespace

std::vector<OptionQuote> Chain::side_quotes(OptionSide side) const {
    std::vector<OptionQuote> out;
    std::copy_if(quotes.begin(), quotes.end(), std::back_inserter(out),
                 [side](const OptionQuote& q) { return q.side == side; });
    return out;
}

std::optional<OptionQuote> Chain::find(OptionSide side, double strike) const {
    for (const OptionQuote& q : quotes)
        if (q.side == side && std::abs(q.strike - strike) <= 1e-12 * strike) return q;
    return std::nullopt;
}

Chain make_chain(double spot, double expiry_years, std::vector<OptionQuote> quotes) {
    if (!(std::isfinite(spot) && spot > 0.0)) fail(ErrorKind::Validation, "chain spot must be positive, got " + fmt(spot));
    if (!(std::isfinite(expiry_years) && expiry_years > 0.0))
        fail(ErrorKind::Validation, "chain expiry_years must be positive, got " + fmt(expiry_years));
    for (std::size_t i = 0; i < quotes.size(); ++i) validate_quote(quotes[i], "quote " + std::to_string(i));
    std::stable_sort(quotes.begin(), quotes.end(), [](const OptionQuote& a, const OptionQuote& b) {
        return a.strike != b.strike ? a.strike < b.strike : a.side < b.side;
    });
    for (std::size_t i = 1; i < quotes.size(); ++i)
        if (quotes[i].strike == quotes[i - 1].strike && quotes[i].side == quotes[i - 1].side)
            fail(ErrorKind::Validation, "duplicate " + std::string(to_string(quotes[i].side)) + " strike " + fmt(quotes[i].strike));
    return Chain{spot, expiry_years, std::move(quotes)};
}

namespace {

Chain load_csv(std::istream& in, const ChainMeta& meta) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<OptionQuote> quotes;
    std::map<std::pair<int, double>, std::size_t> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!have_header) {
            if (line != kCsvHeader)
                fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected header '" + std::string(kCsvHeader) + "'");
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1))
            fields.push_back(rest.substr(0, pos));
        fields.push_back(rest);
        if (fields.size() != 3) fail(ErrorKind::Parse, where + ": expected 3 fields, got " + std::to_string(fields.size()));
        const auto strike = parse_number(fields[0]);
        const auto side = parse_side(fields[1]);
        const auto price = parse_number(fields[2]);
        if (!strike) fail(ErrorKind::Parse, where + ": malformed strike '" + std::string(fields[0]) + "'");
        if (!side) fail(ErrorKind::Parse, where + ": side must be C or P, got '" + std::string(fields[1]) + "'");
        if (!price) fail(ErrorKind::Parse, where + ": malformed price '" + std::string(fields[2]) + "'");
        const OptionQuote q{*strike, *side, *price};
        validate_quote(q, where);
        const auto [it, fresh] = seen.emplace(std::pair{static_cast<int>(q.side), q.strike}, line_no);
        if (!fresh)
            fail(ErrorKind::Validation, where + ": duplicate " + std::string(to_string(q.side)) + " strike " +
                                            fmt(q.strike) + " (first on line " + std::to_string(it->second) + ")");
        quotes.push_back(q);
    }
    if (!have_header) fail(ErrorKind::Parse, "empty CSV input: missing header '" + std::string(kCsvHeader) + "'");
    return make_chain(require_meta(meta.spot, "spot"), require_meta(meta.expiry_years, "expiry_years"), std::move(quotes));
}

json parse_json(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
    }
}

std::optional<double> json_number(const json& doc, const char* key) {
    if (!doc.contains(key)) return std::nullopt;
    const json& v = doc.at(key);
    if (!v.is_number()) fail(ErrorKind::Parse, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

double row_number(const json& row, const char* key, const std::string& where) {
    if (!row.contains(key) || !row.at(key).is_number()) fail(ErrorKind::Parse, where + ": missing numeric '" + key + "'");
    return row.at(key).get<double>();
}

Chain load_json(std::istream& in, const ChainMeta& meta) {
    const json doc = parse_json(in);
    if (!doc.is_object()) fail(ErrorKind::Parse, "chain JSON must be an object");
    const auto spot = meta.spot ? meta.spot : json_number(doc, "spot");
    const auto expiry = meta.expiry_years ? meta.expiry_years : json_number(doc, "expiry_years");
    if (!doc.contains("quotes") || !doc.at("quotes").is_array()) fail(ErrorKind::Parse, "chain JSON needs a 'quotes' array");
    std::vector<OptionQuote> quotes;
    const json& rows = doc.at("quotes");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string where = "quotes[" + std::to_string(i) + "]";
        const json& row = rows[i];
        if (!row.is_object()) fail(ErrorKind::Parse, where + ": expected an object");
        const double strike = row_number(row, "strike", where);
        const auto side = row.contains("side") && row["side"].is_string() ? parse_side(row["side"].get<std::string>()) : std::nullopt;
        if (!side) fail(ErrorKind::Parse, where + ": 'side' must be \"C\" or \"P\"");
        const double price = row_number(row, "price", where);
        OptionQuote q{strike, *side, price};
        validate_quote(q, where);
        quotes.push_back(q);
    }
    return make_chain(require_meta(spot, "spot"), require_meta(expiry, "expiry_years"), std::move(quotes));
}

}  // namespace

Chain load_chain(std::istream& in, ChainFormat format, const ChainMeta& meta) {
    return format == ChainFormat::Csv ? load_csv(in, meta) : load_json(in, meta);
}

ChainMeta load_chain_meta(std::istream& in) {
    const json doc = parse_json(in);
    if (!doc.is_object()) fail(ErrorKind::Parse, "sidecar JSON must be an object");
    return ChainMeta{json_number(doc, "spot"), json_number(doc, "expiry_years")};
}

std::string render_chain_csv(const Chain& chain) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const OptionQuote& q : chain.quotes)
        out << fmt(q.strike) << ',' << (q.side == OptionSide::Call ? 'C' : 'P') << ',' << fmt(q.price) << '\n';
    return out.str();
}

std::string_view to_string(OptionSide side) noexcept { return side == OptionSide::Call ? "call" : "put"; }

std::string_view to_string(Approach approach) noexcept {
    return approach == Approach::PriceTail ? "price_tail" : "return_tail";
}

}  // namespace tailprice
