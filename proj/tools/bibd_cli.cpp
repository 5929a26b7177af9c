#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bibd/constructions.hpp"
#include "bibd/design.hpp"
#include "bibd/enumeration.hpp"
#include "bibd/group_structure.hpp"
#include "bibd/isomorphism.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;       // property holds / construction succeeded
constexpr int exit_property = 1; // property fails, witness printed
constexpr int exit_usage = 2;    // invalid input or usage

// Text reports are flattened key: value lines generated from the same
// JSON object, so both formats carry identical facts by construction.
void print_text(std::ostream& out, const json& j, const std::string& prefix = "") {
    for (const auto& [key, value] : j.items()) {
        std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            print_text(out, value, name);
        } else if (value.is_array()) {
            out << name << ":";
            for (const auto& item : value)
                out << " " << (item.is_string() ? item.get<std::string>() : item.dump());
            out << "\n";
        } else if (value.is_string()) {
            out << name << ": " << value.get<std::string>() << "\n";
        } else {
            out << name << ": " << value.dump() << "\n";
        }
    }
}

void emit(const json& j, bool as_json) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        print_text(std::cout, j);
}

json params_json(const bibd::DesignParams& p) {
    return json{{"v", p.v}, {"b", p.b},      {"k", p.k},
                {"lambda", p.lambda}, {"r", p.r}, {"symmetric", p.symmetric()}};
}

bibd::Design load(const std::string& path) { return bibd::parse_design_file(path); }

void write_out(const bibd::Design& d, const std::string& path) {
    if (path.empty()) {
        bibd::write_design(std::cout, d);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    bibd::write_design(out, d);
}

int run_construct(const std::string& type, int n, const std::string& out_path) {
    bibd::Design d = [&] {
        if (type == "pg")
            return bibd::pg_hyperplanes(static_cast<unsigned>(n));
        if (type == "pg-complement")
            return bibd::pg_complement(static_cast<unsigned>(n));
        if (type == "sylvester-2design")
            return bibd::hadamard_to_2design(bibd::sylvester_hadamard(static_cast<unsigned>(n)));
        if (type == "hadamard-3design")
            return bibd::hadamard_to_3design(bibd::sylvester_hadamard(static_cast<unsigned>(n)));
        return bibd::sdp_biplane(); // sdp-biplane, n ignored
    }();
    write_out(d, out_path);
    return exit_ok;
}

int run_verify(const std::string& path, bool as_json) {
    auto outcome = bibd::verify_bibd(load(path));
    json j;
    j["bibd"] = outcome.ok();
    if (outcome.ok()) {
        j["params"] = params_json(*outcome.params);
        auto sym = bibd::is_symmetric(load(path));
        if (sym.symmetric)
            j["intersection_size"] = *sym.intersection_size;
    } else {
        j["rejection"] = outcome.rejection->message;
        if (outcome.rejection->pair_witness)
            j["pair_witness"] = {outcome.rejection->pair_witness->first,
                                 outcome.rejection->pair_witness->second};
        if (outcome.rejection->block_witness)
            j["block_witness"] = *outcome.rejection->block_witness;
    }
    emit(j, as_json);
    return outcome.ok() ? exit_ok : exit_property;
}

int run_group_check(const std::string& path, bool as_json) {
    bibd::Design d = load(path);
    auto rep = bibd::delta_closure_check(d);
    json j;
    j["closed"] = rep.closed;
    if (rep.witness)
        j["witness"] = {rep.witness->first, rep.witness->second};
    if (rep.group_order)
        j["group_order"] = *rep.group_order;
    if (rep.dimension_n)
        j["dimension_n"] = *rep.dimension_n;
    j["elementary_abelian"] = rep.elementary_abelian;
    if (bibd::verify_bibd(d).ok()) {
        auto l2 = bibd::lemma2_predicate(d);
        j["lemma2"] = json{{"closed", l2.closed},
                           {"params_match", l2.params_match},
                           {"n_from_rank", l2.n_from_rank},
                           {"consistent", l2.consistent}};
    }
    emit(j, as_json);
    return rep.closed ? exit_ok : exit_property;
}

int run_rank(const std::string& path, bool as_json) {
    bibd::Design d = load(path);
    json j;
    j["rank"] = bibd::gf2_rank(bibd::incidence_matrix(d));
    bool bound_ok = true;
    try {
        auto rep = bibd::hamada_bound_check(d);
        j["hamada"] = json{{"n", rep.n},
                           {"rank", rep.rank},
                           {"bound_holds", rep.bound_holds},
                           {"equality", rep.equality}};
        bound_ok = rep.bound_holds;
    } catch (const std::invalid_argument&) {
        // parameters not of the (2^n-1, 2^{n-1}, 2^{n-2}) shape
    }
    emit(j, as_json);
    return bound_ok ? exit_ok : exit_property;
}

int run_iso(const std::string& path1, const std::string& path2, bool emit_certificate,
            bool as_json) {
    bibd::Design d1 = load(path1);
    bibd::Design d2 = load(path2);
    auto cert = bibd::are_isomorphic(d1, d2);
    json j;
    j["isomorphic"] = cert.has_value();
    if (cert && emit_certificate)
        j["certificate"] = cert->to_line();
    emit(j, as_json);
    return cert ? exit_ok : exit_property;
}

int run_sdp_check(const std::string& path, bool as_json) {
    auto rep = bibd::sdp_check(load(path));
    json j;
    j["is_sdp"] = rep.is_sdp;
    if (rep.witness)
        j["witness"] = {(*rep.witness)[0], (*rep.witness)[1], (*rep.witness)[2]};
    emit(j, as_json);
    return rep.is_sdp ? exit_ok : exit_property;
}

int run_good_blocks(const std::string& path, bool as_json) {
    bibd::Design d = load(path);
    auto rep = bibd::good_block_classes(d);
    std::size_t good = 0;
    for (bool g : rep.good_flags)
        good += g;
    json j;
    j["blocks"] = rep.good_flags.size();
    j["good_blocks"] = good;
    j["classes"] = rep.classes.size();
    j["group_table_ok"] = rep.group_table_ok;
    if (rep.group_table_ok) {
        auto grp = bibd::kimberley_group(d, rep);
        j["kimberley_order"] = grp.order;
    }
    emit(j, as_json);
    return good == rep.good_flags.size() && rep.group_table_ok ? exit_ok : exit_property;
}

int run_enumerate(std::uint64_t v, bool allow_long, const std::string& out_dir, bool as_json) {
    bibd::EnumerateOptions opts;
    opts.allow_long = allow_long;
    if (allow_long)
        opts.heartbeat = [](std::uint64_t found) {
            std::cerr << "... " << found << " delta-closed block sets so far\n";
        };
    auto result = bibd::enumerate_delta_closed(v, opts);

    json j;
    j["v"] = result.v;
    j["n"] = result.n;
    j["labeled_count"] = result.labeled_count;
    j["classes"] = result.class_representatives.size();
    j["class_sizes"] = result.class_sizes;
    j["all_bibd"] = result.all_bibd;
    json iso_flags = json::array();
    bibd::Design pg = bibd::pg_complement(result.n);
    for (const auto& rep : result.class_representatives)
        iso_flags.push_back(bibd::are_isomorphic(rep, pg).has_value());
    j["isomorphic_to_pg_complement"] = iso_flags;

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (std::size_t c = 0; c < result.class_representatives.size(); ++c) {
            std::ostringstream name;
            name << out_dir << "/class_" << c << ".txt";
            std::ofstream out(name.str());
            bibd::write_design(out, result.class_representatives[c]);
        }
    }
    emit(j, as_json);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block designs whose blocks form a group under symmetric difference"};
    app.require_subcommand(1);
    std::string format = "text";
    std::string construct_type, out_path, file1, file2, out_dir;
    int n = 0;
    std::uint64_t enum_v = 0;
    bool emit_certificate = false, allow_long = false;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* c_construct = app.add_subcommand("construct", "build a named design");
    c_construct
        ->add_option("type", construct_type,
                     "pg | pg-complement | sylvester-2design | hadamard-3design | sdp-biplane")
        ->required()
        ->check(CLI::IsMember({"pg", "pg-complement", "sylvester-2design", "hadamard-3design",
                               "sdp-biplane"}));
    c_construct->add_option("--n", n, "dimension parameter");
    c_construct->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* c_verify = app.add_subcommand("verify", "check the BIBD property");
    c_verify->add_option("file", file1)->required();
    add_format(c_verify);

    auto* c_group = app.add_subcommand("group-check", "symmetric-difference closure test");
    c_group->add_option("file", file1)->required();
    add_format(c_group);

    auto* c_rank = app.add_subcommand("rank", "GF(2) rank of the incidence matrix");
    c_rank->add_option("file", file1)->required();
    add_format(c_rank);

    auto* c_iso = app.add_subcommand("iso", "decide design isomorphism");
    c_iso->add_option("file1", file1)->required();
    c_iso->add_option("file2", file2)->required();
    c_iso->add_flag("--emit-certificate", emit_certificate, "print the point permutation");
    add_format(c_iso);

    auto* c_sdp = app.add_subcommand("sdp-check", "symmetric difference property test");
    c_sdp->add_option("file", file1)->required();
    add_format(c_sdp);

    auto* c_good = app.add_subcommand("good-blocks", "good blocks and their classes");
    c_good->add_option("file", file1)->required();
    add_format(c_good);

    auto* c_enum = app.add_subcommand("enumerate", "all delta-closed block sets on v points");
    c_enum->add_option("--v", enum_v, "point count, 2^n - 1")->required();
    c_enum->add_flag("--allow-long", allow_long, "permit the v = 31 long run");
    c_enum->add_option("--out-dir", out_dir, "write one file per class representative");
    add_format(c_enum);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    bool json_out = format == "json";
    try {
        if (*c_construct)
            return run_construct(construct_type, n, out_path);
        if (*c_verify)
            return run_verify(file1, json_out);
        if (*c_group)
            return run_group_check(file1, json_out);
        if (*c_rank)
            return run_rank(file1, json_out);
        if (*c_iso)
            return run_iso(file1, file2, emit_certificate, json_out);
        if (*c_sdp)
            return run_sdp_check(file1, json_out);
        if (*c_good)
            return run_good_blocks(file1, json_out);
        if (*c_enum)
            return run_enumerate(enum_v, allow_long, out_dir, json_out);
    } catch (const bibd::ParseError& e) {
        std::cerr << "error: line " << e.line << ": " << e.message << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
