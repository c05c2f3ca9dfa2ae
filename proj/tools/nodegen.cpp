// Command-line front end for the node generation library: model fitting,
// boundary sampling, domain node generation, embedded-boundary modification
// and removal, nearest-neighbor histograms, convergence studies, and
// scaling benchmarks. Data goes to --out (or standard output); diagnostics
// go to standard error. All outputs are byte-reproducible for fixed flags.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nodegen/nodegen.hpp>

namespace {

using namespace nodegen;

struct OutStream {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw IoError("cannot open for writing: " + path);
            os = &file;
        }
    }
    std::ostream& get() { return *os; }
};

ShapeSpec make_shape_spec(const std::string& name, const std::vector<std::string>& params) {
    ShapeSpec spec;
    spec.name = name;
    for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw IoError("--param expects name=value, got: " + kv);
        spec.params[kv.substr(0, eq)] = io::parse_double(kv.substr(eq + 1));
    }
    return spec;
}

template <int D>
ParamSet canonical_params(int n) {
    if constexpr (D == 2)
        return equispaced_circle(n);
    else
        return spiral_points(n).params;
}

template <int D>
SbfModel<D> fit_shape(const Shape& shape, int nd, int m) {
    ParamSet params = canonical_params<D>(nd);
    auto seeds = shape.template sample<D>(params);
    return SbfModel<D>::fit(std::move(seeds), std::move(params), m > 0 ? m : SbfModel<D>::kDefaultOrder);
}

template <int D>
SbfModel<D> fit_seed_file(const io::SeedFile& sf, int m) {
    std::vector<Vec<D>> seeds(sf.x.size());
    for (std::size_t i = 0; i < sf.x.size(); ++i)
        for (int j = 0; j < D; ++j) seeds[i][j] = sf.x[i][j];
    ParamSet params = sf.has_params ? sf.params : canonical_params<D>(static_cast<int>(seeds.size()));
    return SbfModel<D>::fit(std::move(seeds), std::move(params), m > 0 ? m : SbfModel<D>::kDefaultOrder);
}

// ---------------------------------------------------------------- fit ----

struct FitOpts {
    std::string seeds, shape, out;
    std::vector<std::string> params;
    int nd = 0;
    int m = 0;
};

void run_fit(const FitOpts& o) {
    std::string json;
    if (!o.seeds.empty()) {
        const io::SeedFile sf = io::read_seeds_file(o.seeds);
        json = sf.dim == 2 ? fit_seed_file<2>(sf, o.m).to_json() : fit_seed_file<3>(sf, o.m).to_json();
    } else if (!o.shape.empty()) {
        if (o.nd <= 0) throw PreconditionError("fit: --shape requires --nd");
        const Shape shape = Shape::resolve(make_shape_spec(o.shape, o.params));
        json = shape.dim() == 2 ? fit_shape<2>(shape, o.nd, o.m).to_json() : fit_shape<3>(shape, o.nd, o.m).to_json();
    } else {
        throw PreconditionError("fit: need --seeds or --shape");
    }
    OutStream out(o.out);
    out.get() << json << '\n';
}

// ---------------------------------------------------- sample-boundary ----

struct SampleBoundaryOpts {
    std::string model, out;
    double h = 0.0;
    double tau = 2.0;
};

template <int D>
void run_sample_boundary_dim(const SampleBoundaryOpts& o) {
    const auto model = SbfModel<D>::from_json(io::read_text_file(o.model));
    const BoundarySample<D> bs = sample_boundary(model, o.h, o.tau);
    NodeList<D> rows;
    for (const auto& x : bs.points) rows.push_back({x, NodeClass::Boundary, 0});
    OutStream out(o.out);
    io::write_nodes(out.get(), io::to_raw(rows));
    std::cerr << "sampled " << bs.points.size() << " boundary nodes at h=" << o.h << "\n";
}

void run_sample_boundary(const SampleBoundaryOpts& o) {
    if (io::model_file_dim(o.model) == 2)
        run_sample_boundary_dim<2>(o);
    else
        run_sample_boundary_dim<3>(o);
}

// ----------------------------------------------------------- generate ----

struct GenerateOpts {
    std::string model, shape, out, zmap_out, refine;
    std::vector<std::string> params;
    int nd = 0;
    int m = 0;
    double h = 0.0;
    double tau = 2.0;
    int khat = 15;
    std::uint64_t seed = 0;
    bool ghost = false;
};

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(io::parse_double(item));
    return out;
}

template <int D>
void run_generate_dim(const GenerateOpts& o) {
    SbfModel<D> model;
    if (!o.model.empty()) {
        model = SbfModel<D>::from_json(io::read_text_file(o.model));
    } else {
        const Shape shape = Shape::resolve(make_shape_spec(o.shape, o.params));
        model = fit_shape<D>(shape, o.nd, o.m);
    }
    SamplerConfig cfg{o.h, o.khat, o.seed};
    NodeSet<D> nodes = generate(model, o.h, o.tau, cfg);
    if (o.ghost) nodes.ghosts = ghost_nodes(nodes, o.h);
    if (!o.refine.empty()) {
        const auto offsets = parse_double_list(o.refine);
        refine_boundary(nodes, std::span<const double>(offsets));
    }
    const NodeList<D> rows = flatten(nodes);
    {
        OutStream out(o.out);
        io::write_nodes(out.get(), io::to_raw(rows));
    }
    if (!o.zmap_out.empty()) io::write_zmap(o.zmap_out, MembershipMap(rows.size()));
    std::cerr << "generated " << nodes.boundary.points.size() << " boundary + " << nodes.interior.size()
              << " interior nodes";
    if (!nodes.ghosts.empty()) std::cerr << " + " << nodes.ghosts.size() << " ghosts";
    std::cerr << "; interior nodes closer than h/2 to the boundary: " << count_near_boundary(nodes, 0.5 * o.h)
              << "\n";
}

void run_generate(const GenerateOpts& o) {
    if (!(o.h > 0.0)) throw PreconditionError("generate: --h must be positive");
    int dim;
    if (!o.model.empty()) {
        dim = io::model_file_dim(o.model);
    } else if (!o.shape.empty()) {
        if (o.nd <= 0) throw PreconditionError("generate: --shape requires --nd");
        dim = Shape::resolve(make_shape_spec(o.shape, o.params)).dim();
    } else {
        throw PreconditionError("generate: need --model or --shape");
    }
    if (dim == 2)
        run_generate_dim<2>(o);
    else
        run_generate_dim<3>(o);
}

// ------------------------------------------------------------- modify ----

struct ModifyOpts {
    std::string nodes, zmap, embed, alpha = "auto", out, zmap_out;
    double h = 0.0;  // 0 -> inferred from the node set
};

template <int D>
double infer_spacing(const NodeList<D>& rows) {
    std::vector<Vec<D>> pts;
    for (const auto& r : rows)
        if (r.cls == NodeClass::Interior) pts.push_back(r.x);
    if (pts.size() < 2)
        for (const auto& r : rows)
            if (r.cls == NodeClass::Boundary) pts.push_back(r.x);
    if (pts.size() < 2) throw PreconditionError("cannot infer node spacing from fewer than two nodes");
    const auto nn = nn_distances<D>(std::span<const Vec<D>>(pts));
    double h = nn[0];
    for (double d : nn) h = std::min(h, d);
    return h;
}

template <int D>
std::vector<EmbedInput<D>> load_embed_entries(const std::vector<io::EmbedEntry>& entries) {
    std::vector<EmbedInput<D>> out;
    for (const auto& e : entries) {
        EmbedInput<D> in;
        if (e.m > 0) in.m = e.m;
        if (!e.seeds_path.empty()) {
            const io::SeedFile sf = io::read_seeds_file(e.seeds_path);
            if (sf.dim != D) throw IoError(e.seeds_path + ": seed dimension mismatch");
            in.seeds.resize(sf.x.size());
            for (std::size_t i = 0; i < sf.x.size(); ++i)
                for (int j = 0; j < D; ++j) in.seeds[i][j] = sf.x[i][j];
            in.params = sf.has_params ? sf.params : canonical_params<D>(static_cast<int>(sf.x.size()));
        } else {
            const Shape shape = Shape::resolve(e.shape);
            if (shape.dim() != D) throw IoError("embedded shape " + e.shape.name + ": dimension mismatch");
            if (e.nd < D + 1) throw IoError("embedded shape " + e.shape.name + ": nd too small");
            in.params = canonical_params<D>(e.nd);
            in.seeds = shape.template sample<D>(in.params);
        }
        out.push_back(std::move(in));
    }
    return out;
}

template <int D>
void run_modify_dim(const ModifyOpts& o, const io::RawNodes& raw) {
    NodeList<D> rows = io::from_raw<D>(raw);
    MembershipMap zmap;
    if (!o.zmap.empty()) {
        zmap = io::read_zmap_file(o.zmap);
        if (zmap.size() != rows.size()) throw IoError("membership map length does not match the node file");
    }
    const double alpha = (o.alpha == "auto") ? 0.0 : io::parse_double(o.alpha);
    if (o.alpha != "auto" && !(alpha > 0.0)) throw PreconditionError("modify: --alpha must be positive or 'auto'");
    const double h = o.h > 0.0 ? o.h : infer_spacing<D>(rows);
    const auto inputs = load_embed_entries<D>(io::read_embed_spec(o.embed));

    const EmbedResult<D> result = embed_boundaries<D>(rows, zmap, inputs, h, alpha);
    {
        OutStream out(o.out);
        io::write_nodes(out.get(), io::to_raw(result.nodes));
    }
    if (!o.zmap_out.empty()) io::write_zmap(o.zmap_out, result.zmap);

    std::size_t removed = 0;
    for (const auto& z : result.zmap) removed += z.inside;
    std::size_t added = result.nodes.size() - rows.size();
    // collision diagnostic: embedded boundary nodes closer than h/2 to the
    // outer boundary suggest the object touches the domain wall
    std::vector<Vec<D>> domain_boundary;
    for (const auto& r : rows)
        if (r.cls == NodeClass::Boundary) domain_boundary.push_back(r.x);
    std::size_t collisions = 0;
    if (!domain_boundary.empty()) {
        KdTree<D> tree{std::move(domain_boundary)};
        for (std::size_t k = rows.size(); k < result.nodes.size(); ++k)
            if (tree.nearest(result.nodes[k].x).distance < 0.5 * h) ++collisions;
    }
    std::cerr << "embedded " << inputs.size() << " boundaries (h=" << h << "): removed " << removed << " nodes, added "
              << added << " boundary nodes";
    if (collisions) std::cerr << "; WARNING: " << collisions << " embedded nodes within h/2 of the outer boundary";
    // the separation of survivors from the new boundaries is approximate
    // (inflated-boundary half-space test), so it is reported, not enforced
    if (added > 0) {
        std::vector<Vec<D>> gamma;
        for (std::size_t k = rows.size(); k < result.nodes.size(); ++k) gamma.push_back(result.nodes[k].x);
        KdTree<D> gtree{std::move(gamma)};
        double closest = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (!result.zmap[k].inside && rows[k].cls == NodeClass::Interior)
                closest = std::min(closest, gtree.nearest(rows[k].x).distance);
        if (std::isfinite(closest))
            std::cerr << "; min surviving-interior distance to embedded boundaries " << closest << " (" << closest / h
                      << " h)";
    }
    std::cerr << "\n";
}

void run_modify(const ModifyOpts& o) {
    const io::RawNodes raw = io::read_nodes_file(o.nodes);
    if (raw.dim == 2)
        run_modify_dim<2>(o, raw);
    else
        run_modify_dim<3>(o, raw);
}

// ------------------------------------------------------------- remove ----

struct RemoveOpts {
    std::string nodes, zmap, out, zmap_out;
    int id = 0;
};

template <int D>
void run_remove_dim(const RemoveOpts& o, const io::RawNodes& raw) {
    NodeList<D> rows = io::from_raw<D>(raw);
    MembershipMap zmap = io::read_zmap_file(o.zmap);
    if (zmap.size() != rows.size()) throw IoError("membership map length does not match the node file");
    remove_embedded<D>(rows, zmap, o.id);
    {
        OutStream out(o.out);
        io::write_nodes(out.get(), io::to_raw(rows));
    }
    if (!o.zmap_out.empty()) io::write_zmap(o.zmap_out, zmap);
    std::cerr << "removed embedded boundary " << o.id << "\n";
}

void run_remove(const RemoveOpts& o) {
    const io::RawNodes raw = io::read_nodes_file(o.nodes);
    if (raw.dim == 2)
        run_remove_dim<2>(o, raw);
    else
        run_remove_dim<3>(o, raw);
}

// ---------------------------------------------------------- histogram ----

struct HistogramOpts {
    std::string nodes, zmap, cls = "all", out;
    double binwidth = 0.0;
    double maxdist = 0.0;  // 0 -> 16 * binwidth
};

template <int D>
void run_histogram_dim(const HistogramOpts& o, const io::RawNodes& raw) {
    MembershipMap zmap;
    if (!o.zmap.empty()) {
        zmap = io::read_zmap_file(o.zmap);
        if (zmap.size() != raw.size()) throw IoError("membership map length does not match the node file");
    }
    std::vector<Vec<D>> pts;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!zmap.empty() && zmap[i].inside) continue;
        const std::string cname = to_string(raw.cls[i]);
        if (o.cls != "all" && cname != o.cls) continue;
        Vec<D> p{};
        for (int j = 0; j < D; ++j) p[j] = raw.x[i][j];
        pts.push_back(p);
    }
    const double maxdist = o.maxdist > 0.0 ? o.maxdist : 16.0 * o.binwidth;
    const Histogram h = nn_histogram<D>(std::span<const Vec<D>>(pts), o.binwidth, maxdist);
    OutStream out(o.out);
    io::write_histogram(out.get(), h, maxdist);
    std::cerr << "histogram over " << pts.size() << " nodes (class " << o.cls << ")\n";
}

void run_histogram(const HistogramOpts& o) {
    if (!(o.binwidth > 0.0)) throw PreconditionError("histogram: --binwidth must be positive");
    if (o.cls != "all" && o.cls != "boundary" && o.cls != "interior" && o.cls != "ghost" && o.cls != "refined" &&
        o.cls != "embedded-boundary")
        throw IoError("histogram: unknown --class " + o.cls);
    const io::RawNodes raw = io::read_nodes_file(o.nodes);
    if (raw.dim == 2)
        run_histogram_dim<2>(o, raw);
    else
        run_histogram_dim<3>(o, raw);
}

// ----------------------------------------------------------- converge ----

struct ConvergeOpts {
    std::string shape, ladder, out;
    std::vector<std::string> params;
    int m = 0;
};

template <int D>
void run_converge_dim(const ConvergeOpts& o, const Shape& shape) {
    const auto ladder = parse_double_list(o.ladder);
    if (ladder.size() < 3) throw PreconditionError("converge: --nd-ladder needs at least 3 entries");
    std::vector<double> nds, errs, derrs;
    OutStream out(o.out);
    out.get() << "nd,err_linf,deriv_err_linf\n";
    for (double ndval : ladder) {
        const int nd = static_cast<int>(ndval);
        const SbfModel<D> model = fit_shape<D>(shape, nd, o.m);
        const ParamSet dense = canonical_params<D>(10 * nd);
        const double e = shape_error<D>(model, shape, dense, ErrorNorm::Linf);
        const double de = shape.has_derivatives() ? tangent_error<D>(model, shape, dense, ErrorNorm::Linf) : 0.0;
        nds.push_back(nd);
        errs.push_back(e);
        derrs.push_back(de);
        out.get() << nd << ',' << io::format_double(e) << ',' << io::format_double(de) << '\n';
    }
    std::vector<double> xs = nds;
    if constexpr (D == 3)
        for (auto& x : xs) x = std::sqrt(x);  // error scales with 1/h_d = sqrt(N_d)
    out.get() << "# slope_fn=" << io::format_double(fit_slope(xs, errs)) << '\n';
    if (shape.has_derivatives()) out.get() << "# slope_deriv=" << io::format_double(fit_slope(xs, derrs)) << '\n';
}

void run_converge(const ConvergeOpts& o) {
    const Shape shape = Shape::resolve(make_shape_spec(o.shape, o.params));
    if (shape.dim() == 2)
        run_converge_dim<2>(o, shape);
    else
        run_converge_dim<3>(o, shape);
}

// -------------------------------------------------------------- bench ----

struct BenchOpts {
    int dim = 2;
    std::string shape, ladder, out;
    std::vector<std::string> params;
    int nd = 0;
    int khat = 15;
    double tau = 2.0;
    int repeats = 3;
    std::uint64_t seed = 0;
};

template <int D>
void run_bench_dim(const BenchOpts& o, const Shape& shape) {
    const auto ladder = parse_double_list(o.ladder);
    if (ladder.size() < 3) throw PreconditionError("bench: --h-ladder needs at least 3 entries");
    const int nd = o.nd > 0 ? o.nd : (D == 2 ? 128 : 400);
    const auto result =
        bench::scale_generate<D>(shape, nd, std::span<const double>(ladder), o.khat, o.tau, o.repeats, o.seed);
    OutStream out(o.out);
    out.get() << "h,repeat,N,fit_s,boundary_s,obb_s,poisson_s,classify_s,total_s\n";
    for (const auto& pt : result.points)
        for (std::size_t r = 0; r < pt.repeat_stages.size(); ++r) {
            const auto& st = pt.repeat_stages[r];
            out.get() << io::format_double(pt.h) << ',' << r << ',' << pt.n << ',' << io::format_double(st.fit) << ','
                      << io::format_double(st.boundary) << ',' << io::format_double(st.obb) << ','
                      << io::format_double(st.poisson) << ',' << io::format_double(st.classify) << ','
                      << io::format_double(st.total()) << '\n';
        }
    out.get() << "# slope_total=" << io::format_double(result.slope) << '\n';
    std::cerr << "bench slope " << result.slope << " over " << result.points.size() << " ladder points\n";
}

void run_bench(const BenchOpts& o) {
    const Shape shape = Shape::resolve(make_shape_spec(o.shape, o.params));
    if (shape.dim() != o.dim) throw PreconditionError("bench: --dim does not match the shape dimension");
    if (o.dim == 2)
        run_bench_dim<2>(o, shape);
    else
        run_bench_dim<3>(o, shape);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scattered node generation on irregular domains"};
    app.require_subcommand(1);
    // --h is a data flag on several subcommands, so help is --help only
    app.set_help_flag("--help", "Print help");

    FitOpts fit;
    auto* cfit = app.add_subcommand("fit", "Fit a boundary model from seed nodes");
    cfit->set_help_flag("--help", "Print help");
    cfit->add_option("--seeds", fit.seeds, "Seed CSV (x,y[,z][,lambda[,theta]])");
    cfit->add_option("--shape", fit.shape, "Named shape to sample seeds from");
    cfit->add_option("--nd", fit.nd, "Number of seed nodes for --shape");
    cfit->add_option("--param", fit.params, "Shape parameter override name=value");
    cfit->add_option("--m", fit.m, "Kernel order (default 7 in 2D, 6 in 3D)");
    cfit->add_option("--out", fit.out, "Model file (default stdout)");
    cfit->callback([&] { run_fit(fit); });

    SampleBoundaryOpts sb;
    auto* csb = app.add_subcommand("sample-boundary", "Sample boundary nodes at spacing h");
    csb->set_help_flag("--help", "Print help");
    csb->add_option("--model", sb.model, "Model file")->required();
    csb->add_option("--h", sb.h, "Node spacing")->required();
    csb->add_option("--tau", sb.tau, "Supersampling factor")->capture_default_str();
    csb->add_option("--out", sb.out, "Node CSV (default stdout)");
    csb->callback([&] { run_sample_boundary(sb); });

    GenerateOpts gen;
    auto* cgen = app.add_subcommand("generate", "Generate boundary + interior nodes");
    cgen->set_help_flag("--help", "Print help");
    cgen->add_option("--model", gen.model, "Model file");
    cgen->add_option("--shape", gen.shape, "Named shape (fits a model first)");
    cgen->add_option("--nd", gen.nd, "Seed count for --shape");
    cgen->add_option("--param", gen.params, "Shape parameter override name=value");
    cgen->add_option("--m", gen.m, "Kernel order for --shape");
    cgen->add_option("--h", gen.h, "Node spacing")->required();
    cgen->add_option("--tau", gen.tau, "Supersampling factor")->capture_default_str();
    cgen->add_option("--khat", gen.khat, "Poisson neighborhood size")->capture_default_str();
    cgen->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
    cgen->add_flag("--ghost", gen.ghost, "Also emit ghost nodes outside the boundary");
    cgen->add_option("--refine", gen.refine, "Comma-separated refinement offsets in (0,h)");
    cgen->add_option("--out", gen.out, "Node CSV (default stdout)");
    cgen->add_option("--zmap-out", gen.zmap_out, "Write an all-zero membership map");
    cgen->callback([&] { run_generate(gen); });

    ModifyOpts mod;
    auto* cmod = app.add_subcommand("modify", "Remove nodes inside embedded boundaries");
    cmod->set_help_flag("--help", "Print help");
    cmod->add_option("--nodes", mod.nodes, "Node CSV")->required();
    cmod->add_option("--zmap", mod.zmap, "Existing membership map (optional)");
    cmod->add_option("--embed", mod.embed, "Embed spec JSON")->required();
    cmod->add_option("--alpha", mod.alpha, "Boundary node ratio or 'auto'")->capture_default_str();
    cmod->add_option("--h", mod.h, "Node spacing (default: inferred from the node set)");
    cmod->add_option("--out", mod.out, "Modified node CSV (default stdout)");
    cmod->add_option("--zmap-out", mod.zmap_out, "Membership map output");
    cmod->callback([&] { run_modify(mod); });

    RemoveOpts rem;
    auto* crem = app.add_subcommand("remove", "Restore nodes of one embedded boundary");
    crem->set_help_flag("--help", "Print help");
    crem->add_option("--nodes", rem.nodes, "Modified node CSV")->required();
    crem->add_option("--zmap", rem.zmap, "Membership map")->required();
    crem->add_option("--id", rem.id, "Embedded boundary id")->required();
    crem->add_option("--out", rem.out, "Node CSV (default stdout)");
    crem->add_option("--zmap-out", rem.zmap_out, "Updated membership map");
    crem->callback([&] { run_remove(rem); });

    HistogramOpts hist;
    auto* chist = app.add_subcommand("histogram", "Nearest-neighbor distance histogram");
    chist->set_help_flag("--help", "Print help");
    chist->add_option("--nodes", hist.nodes, "Node CSV")->required();
    chist->add_option("--zmap", hist.zmap, "Membership map (skips removed nodes)");
    chist->add_option("--class", hist.cls, "boundary | interior | all")->capture_default_str();
    chist->add_option("--binwidth", hist.binwidth, "Bin width")->required();
    chist->add_option("--maxdist", hist.maxdist, "Histogram range (default 16 * binwidth)");
    chist->add_option("--out", hist.out, "Two-column output (default stdout)");
    chist->callback([&] { run_histogram(hist); });

    ConvergeOpts conv;
    auto* cconv = app.add_subcommand("converge", "Model convergence study on an analytic shape");
    cconv->set_help_flag("--help", "Print help");
    cconv->add_option("--shape", conv.shape, "Named shape")->required();
    cconv->add_option("--param", conv.params, "Shape parameter override name=value");
    cconv->add_option("--m", conv.m, "Kernel order");
    cconv->add_option("--nd-ladder", conv.ladder, "Comma-separated seed counts")->required();
    cconv->add_option("--out", conv.out, "CSV output (default stdout)");
    cconv->callback([&] { run_converge(conv); });

    BenchOpts bench;
    auto* cbench = app.add_subcommand("bench", "Scaling benchmark of the generation pipeline");
    cbench->set_help_flag("--help", "Print help");
    cbench->add_option("--dim", bench.dim, "2 or 3")->required();
    cbench->add_option("--shape", bench.shape, "Named shape")->required();
    cbench->add_option("--param", bench.params, "Shape parameter override name=value");
    cbench->add_option("--nd", bench.nd, "Seed count (default 128 in 2D, 400 in 3D)");
    cbench->add_option("--h-ladder", bench.ladder, "Comma-separated h values")->required();
    cbench->add_option("--khat", bench.khat, "Poisson neighborhood size")->capture_default_str();
    cbench->add_option("--tau", bench.tau, "Supersampling factor")->capture_default_str();
    cbench->add_option("--repeats", bench.repeats, "Repeats per ladder point")->capture_default_str();
    cbench->add_option("--seed", bench.seed, "PRNG seed")->capture_default_str();
    cbench->add_option("--out", bench.out, "CSV output (default stdout)");
    cbench->callback([&] { run_bench(bench); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SingularMatrixError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
