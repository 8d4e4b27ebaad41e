#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "delcode/analysis.hpp"
#include "delcode/bitseq.hpp"
#include "delcode/construction.hpp"
#include "delcode/errors.hpp"
#include "delcode/hashing.hpp"

namespace {

using namespace delcode;
namespace fs = std::filesystem;

uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::string default_cache_dir() {
    const char* env = std::getenv("DELCODE_CACHE_DIR");
    return env != nullptr ? env : ".";
}

// Loads the cached family table for s, building and caching it on a miss.
std::shared_ptr<const HashFamily> family_for(unsigned s, const std::string& dir) {
    fs::path path = fs::path(dir) / ("hfam-v1-s" + std::to_string(s) + ".bin");
    if (fs::exists(path)) {
        auto fam = std::make_shared<HashFamily>(HashFamily::load(path.string()));
        if (fam->s != s) {
            throw std::invalid_argument("cache file " + path.string() +
                                        " was built for s = " + std::to_string(fam->s));
        }
        return fam;
    }
    auto fam = std::make_shared<HashFamily>(build_hash_family(s));
    if (!dir.empty()) fs::create_directories(fs::path(dir));
    fam->save(path.string());
    return fam;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << text;
}

// Stored targets from a previously emitted params or codebook header line,
// cross-checked against the requested parameters.
ConstraintTargets targets_from_file(const std::string& path, const CodeParams& p) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open targets file " + path);
    std::string line;
    std::getline(in, line);
    CodebookHeader h = parse_codebook_header(line);
    if (h.n != p.n || h.s != p.s || h.construction != p.construction) {
        throw std::invalid_argument("targets file " + path +
                                    " was written for different parameters");
    }
    return h.targets;
}

struct CommonArgs {
    uint64_t n = 0;
    unsigned s = 0;
    int construction = 0;
    std::string out;
    std::string targets_file;
};

CodeParams params_from(const CommonArgs& a, const std::string& cache_dir) {
    Construction c = construction_from_int(a.construction);
    auto fam = family_for(a.s, cache_dir);
    return derive_params(a.n, a.s, c, fam);
}

ConstraintTargets targets_for(const CommonArgs& a, const CodeParams& p) {
    if (!a.targets_file.empty()) return targets_from_file(a.targets_file, p);
    return select_targets(p);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-deletion-correcting block codes: enumeration, decoding, analysis"};
    app.require_subcommand(1);

    std::string cache_dir = default_cache_dir();
    app.add_option("--cache-dir", cache_dir, "directory for hash family table caches")
        ->capture_default_str();
    app.fallthrough();

    int exit_code = 0;

    CommonArgs pa;
    auto* cmd_params = app.add_subcommand("params", "derive code parameters and stored targets");
    cmd_params->add_option("--n", pa.n, "codeword length")->required();
    cmd_params->add_option("--s", pa.s, "segment length bound")->required();
    cmd_params->add_option("--construction", pa.construction, "1 = four markers, 2 = run bounded")
        ->required();
    cmd_params->add_option("--targets", pa.targets_file,
                           "reuse stored targets from a params/codebook file");
    cmd_params->add_option("--out", pa.out, "output file (default stdout)");
    cmd_params->callback([&] {
        CodeParams p = params_from(pa, cache_dir);
        ConstraintTargets t = targets_for(pa, p);
        emit(pa.out, params_json(p, t) + "\n");
    });

    CommonArgs ba;
    auto* cmd_book = app.add_subcommand("codebook", "enumerate the codebook to a file");
    cmd_book->add_option("--n", ba.n, "codeword length")->required();
    cmd_book->add_option("--s", ba.s, "segment length bound")->required();
    cmd_book->add_option("--construction", ba.construction, "1 = four markers, 2 = run bounded")
        ->required();
    cmd_book->add_option("--targets", ba.targets_file,
                         "reuse stored targets from a params/codebook file");
    cmd_book->add_option("--out", ba.out, "output file (default stdout)");
    cmd_book->callback([&] {
        CodeParams p = params_from(ba, cache_dir);
        ConstraintTargets t = targets_for(ba, p);
        std::vector<BitString> book = enumerate_codebook(p, t);
        std::ostringstream text;
        text << codebook_header_json(p, t, book.size()) << "\n";
        for (const BitString& x : book) text << x.str() << "\n";
        emit(ba.out, text.str());
    });

    std::string corrupt_word;
    std::size_t corrupt_i1 = 0;
    std::size_t corrupt_i2 = 0;
    uint64_t corrupt_seed = 0;
    std::string corrupt_out;
    auto* cmd_corrupt = app.add_subcommand("corrupt", "delete two positions of a word");
    cmd_corrupt->add_option("--word", corrupt_word, "word to corrupt")->required();
    auto* opt_i1 = cmd_corrupt->add_option("--i1", corrupt_i1, "first deletion position, 1-based");
    auto* opt_i2 = cmd_corrupt->add_option("--i2", corrupt_i2, "second deletion position, 1-based");
    opt_i1->needs(opt_i2);
    opt_i2->needs(opt_i1);
    cmd_corrupt->add_option("--seed", corrupt_seed, "draw the pair from this seed instead");
    cmd_corrupt->add_option("--out", corrupt_out, "output file (default stdout)");
    cmd_corrupt->callback([&] {
        BitString x = BitString::from_string(corrupt_word);
        std::size_t i1 = corrupt_i1;
        std::size_t i2 = corrupt_i2;
        if (opt_i1->count() == 0) {
            if (x.size() < 2) throw std::invalid_argument("corrupt: word shorter than 2");
            std::size_t a = mix64(corrupt_seed) % x.size();
            std::size_t b = mix64(corrupt_seed + 1) % (x.size() - 1);
            if (b >= a) ++b; // distinct pair, uniform over ordered pairs
            i1 = std::min(a, b) + 1;
            i2 = std::max(a, b) + 1;
        }
        BitString y = delete2(x, {i1, i2});
        nlohmann::ordered_json j;
        j["word"] = y.str();
        j["i1"] = i1;
        j["i2"] = i2;
        emit(corrupt_out, j.dump() + "\n");
    });

    std::string decode_book;
    std::string decode_word;
    std::string decode_out;
    auto* cmd_decode = app.add_subcommand("decode", "decode a received word against a codebook");
    cmd_decode->add_option("--codebook", decode_book, "codebook file with header line")
        ->required();
    cmd_decode->add_option("--word", decode_word, "received word")->required();
    cmd_decode->add_option("--out", decode_out, "output file (default stdout)");
    cmd_decode->callback([&] {
        std::ifstream in(decode_book);
        if (!in) throw std::runtime_error("cannot open codebook file " + decode_book);
        std::string line;
        std::getline(in, line);
        CodebookHeader h = parse_codebook_header(line);
        auto fam = family_for(h.s, cache_dir);
        CodeParams p = derive_params(h.n, h.s, h.construction, fam);
        DecodeOutcome out = decode(BitString::from_string(decode_word), p, h.targets);
        nlohmann::ordered_json j;
        j["recovered"] = out.recovered.str();
        j["branch"] = out.branch;
        emit(decode_out, j.dump() + "\n");
    });

    CommonArgs va;
    auto* cmd_verify =
        app.add_subcommand("verify", "exhaustively check two-deletion correction of a codebook");
    cmd_verify->add_option("--n", va.n, "codeword length")->required();
    cmd_verify->add_option("--s", va.s, "segment length bound")->required();
    cmd_verify->add_option("--construction", va.construction, "1 = four markers, 2 = run bounded")
        ->required();
    cmd_verify->add_option("--targets", va.targets_file,
                           "reuse stored targets from a params/codebook file");
    cmd_verify->add_option("--out", va.out, "output file (default stdout)");
    cmd_verify->callback([&] {
        CodeParams p = params_from(va, cache_dir);
        ConstraintTargets t = targets_for(va, p);
        std::vector<BitString> book = enumerate_codebook(p, t);
        std::size_t pairs = 0;
        for (const BitString& x : book) {
            for (std::size_t i1 = 1; i1 <= p.n; ++i1) {
                for (std::size_t i2 = i1 + 1; i2 <= p.n; ++i2) {
                    BitString y = delete2(x, {i1, i2});
                    std::string failure;
                    try {
                        DecodeOutcome out = decode(y, p, t);
                        if (out.recovered != x) failure = "decoder returned a different codeword";
                        if (failure.empty() && oracle_decode(y, p, t) != x) {
                            failure = "oracle found a different codeword";
                        }
                    } catch (const DecodeFailure& e) {
                        failure = e.what();
                    }
                    if (!failure.empty()) {
                        nlohmann::ordered_json cj;
                        cj["status"] = "counterexample";
                        cj["codeword"] = x.str();
                        cj["i1"] = i1;
                        cj["i2"] = i2;
                        cj["received"] = y.str();
                        cj["reason"] = failure;
                        emit(va.out, cj.dump() + "\n");
                        exit_code = 4;
                        return;
                    }
                    ++pairs;
                }
            }
        }
        nlohmann::ordered_json sj;
        sj["n"] = p.n;
        sj["s"] = p.s;
        sj["construction"] = construction_to_int(p.construction);
        sj["codebook_size"] = book.size();
        sj["pairs_checked"] = pairs;
        sj["status"] = "ok";
        emit(va.out, sj.dump() + "\n");
    });

    uint64_t red_min = 0;
    uint64_t red_max = 0;
    std::string red_out;
    auto* cmd_red = app.add_subcommand("redundancy", "redundancy and rate table as CSV");
    cmd_red->add_option("--n-min", red_min, "smallest length, rounded to powers of two")
        ->required();
    cmd_red->add_option("--n-max", red_max, "largest length")->required();
    cmd_red->add_option("--out", red_out, "output file (default stdout)");
    cmd_red->callback([&] { emit(red_out, redundancy_csv(red_min, red_max)); });

    uint64_t cp_n = 0;
    unsigned cp_s = 0;
    uint64_t cp_trials = 10000;
    uint64_t cp_seed = 0;
    std::string cp_out;
    auto* cmd_cp = app.add_subcommand("constraint-prob",
                                      "sampled constrained-space density against the lower bound");
    cmd_cp->add_option("--n", cp_n, "string length")->required();
    cmd_cp->add_option("--s", cp_s, "segment length bound (even)")->required();
    cmd_cp->add_option("--trials", cp_trials, "sample count")->capture_default_str();
    cmd_cp->add_option("--seed", cp_seed, "sampling seed")->capture_default_str();
    cmd_cp->add_option("--out", cp_out, "output file (default stdout)");
    cmd_cp->callback([&] {
        MembershipEstimate e = monte_carlo_membership(cp_n, cp_s, cp_trials, cp_seed);
        double bound = whole_string_bound(cp_n, cp_s);
        std::ostringstream text;
        text << "n,s,trials,seed,mc_estimate,ci_low,ci_high,lower_bound,exact\n";
        text << cp_n << ',' << cp_s << ',' << cp_trials << ',' << cp_seed << ','
             << std::fixed << std::setprecision(9) << e.estimate << ',' << e.ci_low << ','
             << e.ci_high << ',' << bound << ',';
        if (cp_n <= 24) text << exhaustive_membership_density(cp_n, cp_s);
        text << "\n";
        emit(cp_out, text.str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            return app.exit(e);
        }
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const CollisionError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const DecodeFailure& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const ConstraintViolation& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
