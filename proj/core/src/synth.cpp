#include "citelink/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string_view>

#include "citelink/error.hpp"

namespace citelink {

namespace {

constexpr std::array<std::string_view, 120> kLongWords{
    "analysis",    "citation",     "database",    "coverage",    "journal",     "impact",      "scholar",
    "bibliometric", "indicator",   "ranking",     "network",     "retrieval",   "evaluation",  "research",
    "scientific",  "publication",  "measure",     "method",      "comparison",  "statistical", "model",
    "distribution", "authorship",  "collaboration", "productivity", "performance", "assessment", "metric",
    "quality",     "peer",         "review",      "open",        "access",      "repository",  "archive",
    "digital",     "library",      "science",     "mapping",     "visualization", "clustering", "topic",
    "semantic",    "text",         "mining",      "patent",      "funding",     "policy",      "university",
    "country",     "field",        "discipline",  "growth",      "decline",     "trend",       "dynamics",
    "temporal",    "delay",        "indexing",    "speed",       "accuracy",    "bias",        "error",
    "duplicate",   "record",       "linkage",     "matching",    "entity",      "resolution",  "graph",
    "centrality",  "diffusion",    "knowledge",   "innovation",  "economics",   "sociology",   "physics",
    "chemistry",   "biology",      "medicine",    "clinical",    "trial",       "genome",      "protein",
    "catalysis",   "polymer",      "crystal",     "quantum",     "optical",     "laser",       "sensor",
    "robotics",    "learning",     "neural",      "deep",        "machine",     "language",    "corpus",
    "translation", "speech",       "vision",      "image",       "political",   "election",    "voting",
    "democracy",   "governance",   "regional",    "urban",       "climate",     "energy",      "water",
    "forest",      "soil",         "marine",      "ocean",       "fishery",     "agriculture", "health",
    "nursing",
};

// Stand-ins for titles written in another language. Disjoint from kLongWords.
constexpr std::array<std::string_view, 40> kForeignWords{
    "analyse",     "zitierung",   "datenbank",   "vergleich",   "wissenschaft", "forschung",  "zeitschrift",
    "bewertung",   "verteilung",  "netzwerk",    "estudio",     "analisis",     "revista",    "citas",
    "comparacion", "ciencia",     "calidad",     "evaluacion",  "autores",      "produccion", "rendimiento",
    "indicadores", "universidad", "politica",    "desarrollo",  "sociedad",     "economia",   "mercado",
    "educacion",   "ensenanza",   "aprendizaje", "lenguaje",    "historia",     "cultura",    "medicina",
    "sanidad",     "energia",     "agua",        "clima",       "territorio",
};

constexpr std::array<std::string_view, 12> kFillers{"a", "an", "of", "the", "in", "on", "and", "for", "to", "by", "via", "at"};

constexpr std::array<std::string_view, 80> kSurnames{
    "Kleinberg", "Moed",      "Garfield",  "Price",      "Merton",    "Hirsch",    "Egghe",     "Rousseau",
    "Leydesdorff", "Bornmann", "Waltman",  "VanRaan",    "Glanzel",   "Schubert",  "Braun",     "Harzing",
    "Meho",      "Yang",      "Bar-Ilan",  "Thelwall",   "Kousha",    "Jacso",     "Martin",    "Orduna",
    "Delgado",   "Lopez",     "Cozar",     "Archambault", "Larivière", "Gingras",  "Sugimoto",  "Cronin",
    "Wouters",   "Costas",    "Zahedi",    "Haustein",   "Lariviere", "Mongeon",   "Paul-Hus",  "Abramo",
    "D'Angelo",  "Aksnes",    "Sivertsen", "Schneider",  "Frandsen", "Nicolaisen", "Ingwersen", "Bjorneborn",
    "Vaughan",   "Shaw",      "Nisonger",  "Adams",      "Pendlebury", "Small",    "Boyack",    "Klavans",
    "Chen",      "Wang",      "Zhang",     "Liu",        "Li",        "Kim",       "Park",      "Lee",
    "Tanaka",    "Suzuki",    "Sato",      "Rossi",      "Bianchi",   "Muller",    "Schmidt",   "Dupont",
    "Martinez",  "Núñez",     "Ortega",    "Silva",      "Santos",    "Costa",     "Novak",     "Kowalski",
};

constexpr std::array<std::string_view, 24> kDomains{
    "books.google.com", "springer.com",       "ssrn.com",          "researchgate.net", "dl.acm.org",
    "arxiv.org",        "aclweb.org",         "sciencedirect.com", "wiley.com",        "tandfonline.com",
    "sagepub.com",      "ieeexplore.ieee.org", "jstor.org",        "mdpi.com",         "plos.org",
    "nature.com",       "citeseerx.ist.psu.edu", "academia.edu",   "repositorio.ucm.es", "hal.science",
    "diva-portal.org",  "dspace.mit.edu",     "eprints.soton.ac.uk", "semanticscholar.org",
};

constexpr std::array<std::string_view, 10> kPublishers{
    "Elsevier", "Springer", "Wiley",   "SAGE",      "Taylor & Francis",
    "Emerald",  "IEEE",     "ACM",     "Macmillan", "Royal Society of Chemistry",
};

constexpr std::array<std::string_view, 20> kJournalStems{
    "Informetrics",     "Scientometric Research", "Library Science",   "Information Systems", "Documentation",
    "Political Research", "Inorganic Chemistry",  "Applied Physics",   "Clinical Medicine",   "Ecology",
    "Economic Studies", "Computational Linguistics", "Social Networks", "Higher Education",  "Marine Biology",
    "Public Health",    "Materials Science",      "Urban Studies",     "Energy Policy",       "Neuroscience",
};

struct Person {
    std::string last;
    std::string initials; // uppercase letters
};

struct Source {
    std::string title;
    std::string publisher;
    bool in_scopus_list = false;
};

// A true document. Every record of the corpora is a rendering of one.
struct Work {
    std::vector<std::string> words;      // title words, fillers included
    std::vector<std::string> translated; // title of the cross-language copy
    std::vector<Person> authors;
    int year = 2012;
    std::size_t source = 0;
    std::string volume;
    std::string start_page;
    std::string domain;
};

// How one copy of a work deviates from the canonical rendering.
struct Variant {
    bool accents = false;
    bool drop_short = false;
    bool reformat_authors = false;
    bool missing_source = false;
    bool missing_year = false;
    bool missing_volume = false;
    bool translated = false;
    int year_delta = 0;
};

template <typename T, std::size_t N>
const T &pick(SynthRng &rng, const std::array<T, N> &pool) {
    return pool[static_cast<std::size_t>(rng.uniform_int(0, N - 1))];
}

std::string accentize(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case 'e':
            out += "é";
            break;
        case 'a':
            out += "á";
            break;
        case 'o':
            out += "ö";
            break;
        case 'u':
            out += "ü";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string capitalized(std::string_view word) {
    std::string s(word);
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z')
        s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

bool is_filler(std::string_view w) { return std::find(kFillers.begin(), kFillers.end(), w) != kFillers.end(); }

class Generator {
public:
    explicit Generator(const SynthConfig &config) : config_(config), rng_(config.seed) {}

    SynthCorpora run();

private:
    RecordId next_id() { return RecordId{next_id_++}; }

    void build_catalog();
    Work make_work(int min_year, std::size_t source);
    Variant noisy_variant();
    BibRecord render(const Work &w, const Variant &v, Provenance p, RecordKind kind,
                     std::optional<RecordId> target) const;
    void plant_duplicates(Corpus &corpus, Provenance p, const std::map<RecordId, std::pair<const Work *, Variant>> &made);

    const SynthConfig &config_;
    SynthRng rng_;
    std::uint64_t next_id_ = 1;
    std::vector<Source> sources_;
    std::vector<std::size_t> journals_;          // target journals
    std::vector<std::size_t> scopus_shared_;     // Scopus-listed, usable by GS works
    std::vector<std::size_t> scopus_exclusive_;  // Scopus-listed, never in GS
    std::vector<std::size_t> gs_only_sources_;   // not in the Scopus list
    std::vector<std::pair<std::string, bool>> aip_;
    std::vector<PlantedDuplicate> planted_;
};

void Generator::build_catalog() {
    std::vector<std::size_t> order(kPublishers.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(i - 1)))]);
    const auto with_aip = static_cast<std::size_t>(std::lround(config_.aip_publisher_fraction * kPublishers.size()));
    std::vector<bool> has_aip(kPublishers.size(), false);
    for (std::size_t i = 0; i < with_aip; ++i)
        has_aip[order[i]] = true;
    for (std::size_t i = 0; i < kPublishers.size(); ++i)
        aip_.emplace_back(std::string(kPublishers[i]), has_aip[i]);

    auto add = [&](std::string title, std::string publisher, bool listed) {
        sources_.push_back({std::move(title), std::move(publisher), listed});
        return sources_.size() - 1;
    };
    for (int j = 0; j < config_.n_journals; ++j) {
        const auto stem = kJournalStems[static_cast<std::size_t>(j) % kJournalStems.size()];
        journals_.push_back(add("Journal of " + std::string(stem) + (j >= static_cast<int>(kJournalStems.size()) ? " " + std::to_string(j) : ""),
                                std::string(kPublishers[static_cast<std::size_t>(j) % kPublishers.size()]), true));
    }
    for (std::size_t i = 0; i < 30; ++i) {
        const auto stem = kJournalStems[i % kJournalStems.size()];
        const auto &publisher = kPublishers[(i * 3) % kPublishers.size()];
        scopus_shared_.push_back(add(std::string(i % 2 ? "International Journal of " : "Advances in ") + std::string(stem) +
                                         " " + std::string(1, static_cast<char>('A' + i % 26)),
                                     std::string(publisher), true));
    }
    for (std::size_t i = 0; i < 12; ++i) {
        const auto stem = kJournalStems[(i * 7) % kJournalStems.size()];
        scopus_exclusive_.push_back(add("Transactions on " + std::string(stem) + " " + std::to_string(i + 1),
                                        std::string(kPublishers[(i * 5 + 1) % kPublishers.size()]), true));
    }
    for (std::size_t i = 0; i < 16; ++i) {
        const auto stem = kJournalStems[(i * 11) % kJournalStems.size()];
        static constexpr std::array<std::string_view, 4> kinds{"Working Papers in ", "Proceedings of the Workshop on ",
                                                                "Doctoral Thesis Series in ", "Handbook of "};
        gs_only_sources_.push_back(add(std::string(kinds[i % kinds.size()]) + std::string(stem) + " " + std::to_string(i + 1),
                                       "University Press " + std::to_string(i % 5 + 1), false));
    }
}

Work Generator::make_work(int min_year, std::size_t source) {
    Work w;
    const int n_long = static_cast<int>(rng_.uniform_int(4, 9));
    std::vector<std::string_view> chosen;
    while (static_cast<int>(chosen.size()) < n_long) {
        const auto word = pick(rng_, kLongWords);
        if (std::find(chosen.begin(), chosen.end(), word) == chosen.end())
            chosen.push_back(word);
    }
    for (auto word : chosen) {
        if (rng_.chance(0.3))
            w.words.emplace_back(pick(rng_, kFillers));
        w.words.emplace_back(word);
    }
    std::vector<std::string_view> foreign;
    while (foreign.size() < 5) {
        const auto word = pick(rng_, kForeignWords);
        if (std::find(foreign.begin(), foreign.end(), word) == foreign.end())
            foreign.push_back(word);
    }
    for (auto word : foreign)
        w.translated.emplace_back(word);

    const int n_authors = static_cast<int>(rng_.uniform_int(1, 4));
    for (int i = 0; i < n_authors; ++i) {
        Person p;
        p.last = std::string(pick(rng_, kSurnames));
        const int n_initials = static_cast<int>(rng_.uniform_int(1, 2));
        for (int k = 0; k < n_initials; ++k)
            p.initials += static_cast<char>('A' + rng_.uniform_int(0, 25));
        w.authors.push_back(std::move(p));
    }
    w.year = static_cast<int>(rng_.uniform_int(min_year, std::max(min_year, 2015)));
    w.source = source;
    w.volume = std::to_string(rng_.uniform_int(1, 120));
    w.start_page = std::to_string(rng_.uniform_int(1, 2400));
    w.domain = std::string(pick(rng_, kDomains));
    return w;
}

Variant Generator::noisy_variant() {
    const auto &n = config_.noise;
    Variant v;
    v.accents = n.diacritics && rng_.chance(n.rate);
    v.drop_short = n.drop_short_tokens && rng_.chance(n.rate);
    v.reformat_authors = n.author_reformat && rng_.chance(n.rate);
    v.missing_source = n.missing_source && rng_.chance(n.rate);
    if (n.year_shift != 0 && rng_.chance(n.rate))
        v.year_delta = rng_.chance(0.5) ? n.year_shift : -n.year_shift;
    return v;
}

BibRecord Generator::render(const Work &w, const Variant &v, Provenance p, RecordKind kind,
                            std::optional<RecordId> target) const {
    BibRecord r;
    r.provenance = p;
    r.kind = kind;
    r.cites_target = target;

    std::string title;
    const auto &words = v.translated ? w.translated : w.words;
    for (const auto &word : words) {
        if (v.drop_short && is_filler(word))
            continue;
        if (!title.empty())
            title += ' ';
        title += title.empty() ? capitalized(word) : word;
    }
    r.title = v.accents ? accentize(title) : title;

    for (const auto &a : w.authors) {
        const std::string last = v.accents ? accentize(a.last) : a.last;
        if (v.reformat_authors) {
            r.authors.push_back(a.initials + " " + last);
        } else {
            std::string dotted;
            for (char c : a.initials) {
                dotted += c;
                dotted += '.';
            }
            r.authors.push_back(last + ", " + dotted);
        }
    }

    const auto &source = sources_[w.source];
    if (!v.missing_source)
        r.source_title = source.title;
    r.publisher = source.publisher;
    if (!v.missing_year)
        r.year = w.year + v.year_delta;
    if (!v.missing_volume) {
        r.volume = w.volume;
        r.start_page = w.start_page;
    }
    if (p != Provenance::Scopus)
        r.web_domain = w.domain;
    return r;
}

SynthCorpora Generator::run() {
    config_.validate();
    build_catalog();

    SynthCorpora out;
    auto &truth = out.truth;
    for (const auto &s : sources_) {
        if (s.in_scopus_list)
            out.scopus_source_list.push_back(s.title);
    }
    out.aip_table = aip_;

    // Works are kept alive for the duplicate planting pass.
    std::vector<std::unique_ptr<Work>> works;
    works.reserve(1024);
    std::map<RecordId, std::pair<const Work *, Variant>> made_search, made_metrics, made_scopus;

    struct TargetIds {
        std::optional<RecordId> search, metrics, scopus;
    };
    std::vector<TargetIds> target_ids(static_cast<std::size_t>(config_.n_targets));
    std::vector<const Work *> target_works;

    for (int t = 0; t < config_.n_targets; ++t) {
        const auto journal = journals_[static_cast<std::size_t>(t % config_.n_journals)];
        works.push_back(std::make_unique<Work>(make_work(2010, journal)));
        auto &w = *works.back();
        w.year = static_cast<int>(rng_.uniform_int(2010, 2014));
        target_works.push_back(&w);
        const Variant gs_variant = noisy_variant();

        auto &ids = target_ids[static_cast<std::size_t>(t)];
        auto search = render(w, gs_variant, Provenance::GsSearch, RecordKind::Target, std::nullopt);
        search.id = next_id();
        ids.search = search.id;
        auto metrics = render(w, gs_variant, Provenance::GsMetrics, RecordKind::Target, std::nullopt);
        metrics.id = next_id();
        ids.metrics = metrics.id;
        auto scopus = render(w, Variant{}, Provenance::Scopus, RecordKind::Target, std::nullopt);
        scopus.id = next_id();
        ids.scopus = scopus.id;
        truth.target_pairs.emplace_back(search.id, scopus.id);
        truth.search_metrics_pairs.emplace_back(search.id, metrics.id);
        out.gs_search.push_back(std::move(search));
        out.gs_metrics.push_back(std::move(metrics));
        out.scopus.push_back(std::move(scopus));
    }

    std::vector<std::size_t> shared_used; // Scopus-listed sources that appear in shared works
    std::int64_t cumulative_side = 0;
    std::int64_t cumulative_both = 0;
    std::vector<std::int64_t> gs_citers(target_ids.size(), 0), scopus_citers(target_ids.size(), 0);

    for (std::size_t t = 0; t < target_ids.size(); ++t) {
        const auto &ids = target_ids[t];
        const auto n_side = rng_.uniform_int(config_.citers_min, config_.citers_max);
        cumulative_side += n_side;
        const auto both_total = std::llround(config_.overlap_fraction * static_cast<double>(cumulative_side));
        const auto n_both = both_total - cumulative_both;
        cumulative_both = both_total;
        const auto n_one_side = n_side - n_both;
        const int min_year = target_works[t]->year;

        // GS citing works: shared ones first, then GS-only ones.
        for (std::int64_t c = 0; c < n_side; ++c) {
            const bool planned_shared = c < n_both;
            const bool scopus_source = planned_shared || rng_.chance(config_.scopus_source_fraction);
            std::size_t source;
            if (scopus_source)
                source = scopus_shared_[static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(scopus_shared_.size()) - 1))];
            else
                source = gs_only_sources_[static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(gs_only_sources_.size()) - 1))];
            works.push_back(std::make_unique<Work>(make_work(min_year, source)));
            const Work &w = *works.back();

            Variant gs_variant = noisy_variant();
            gs_variant.missing_year = rng_.chance(config_.missing_year_rate);
            const bool cross_language = planned_shared && rng_.chance(config_.cross_language_rate);
            gs_variant.translated = cross_language;
            if (!cross_language)
                gs_variant.missing_volume = rng_.chance(0.3);

            const int age = static_cast<int>(rng_.uniform_int(0, 364));
            bool in_scopus = planned_shared;
            std::optional<int> delay;
            if (config_.delay && scopus_source) {
                delay = static_cast<int>(std::floor(config_.delay->quantile(rng_.uniform01())));
                in_scopus = *delay <= age;
            }

            const bool metrics_only = rng_.chance(config_.gs_metrics_only_rate);
            const bool search_only = !metrics_only && rng_.chance(config_.gs_search_only_rate);
            const bool stub = rng_.chance(0.025);
            const auto citations = rng_.uniform_int(0, 40);

            std::optional<RecordId> search_id, metrics_id;
            if (!metrics_only) {
                auto r = render(w, gs_variant, Provenance::GsSearch, RecordKind::Citing, ids.search);
                r.id = next_id();
                r.entry_age_days = age;
                r.citation_count = citations;
                r.is_citation_stub = stub;
                search_id = r.id;
                made_search[r.id] = {&w, gs_variant};
                out.gs_search.push_back(std::move(r));
            }
            if (!search_only) {
                auto r = render(w, gs_variant, Provenance::GsMetrics, RecordKind::Citing, ids.metrics);
                r.id = next_id();
                r.entry_age_days = age;
                r.citation_count = citations;
                r.is_citation_stub = stub;
                metrics_id = r.id;
                made_metrics[r.id] = {&w, gs_variant};
                out.gs_metrics.push_back(std::move(r));
            }
            if (search_id && metrics_id)
                truth.search_metrics_pairs.emplace_back(*search_id, *metrics_id);
            const RecordId gs_id = search_id ? *search_id : *metrics_id;
            ++gs_citers[t];
            if (delay)
                truth.delays_days[gs_id] = *delay;

            if (in_scopus) {
                auto r = render(w, Variant{}, Provenance::Scopus, RecordKind::Citing, ids.scopus);
                r.id = next_id();
                r.citation_count = std::max<std::int64_t>(0, citations - rng_.uniform_int(0, 5));
                made_scopus[r.id] = {&w, Variant{}};
                truth.citing_pairs.emplace_back(gs_id, r.id);
                if (cross_language)
                    truth.cross_language_pairs.emplace_back(gs_id, r.id);
                truth.categories[gs_id] = CategoryValue::Both;
                truth.categories[r.id] = CategoryValue::Both;
                ++scopus_citers[t];
                shared_used.push_back(source);
                out.scopus.push_back(std::move(r));
            } else {
                truth.categories[gs_id] = scopus_source ? CategoryValue::GsOnlyScopusSource : CategoryValue::GsOnlyNoScopusSource;
            }
        }

        // Scopus-only works; their sources are decided once all shared works of
        // this target exist, so shared_used may grow across targets.
        for (std::int64_t c = 0; c < n_one_side; ++c) {
            const bool gs_source = !shared_used.empty() && rng_.chance(0.5);
            const std::size_t source =
                gs_source ? shared_used[static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(shared_used.size()) - 1))]
                          : scopus_exclusive_[static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(scopus_exclusive_.size()) - 1))];
            works.push_back(std::make_unique<Work>(make_work(min_year, source)));
            auto r = render(*works.back(), Variant{}, Provenance::Scopus, RecordKind::Citing, ids.scopus);
            r.id = next_id();
            r.citation_count = rng_.uniform_int(0, 40);
            made_scopus[r.id] = {works.back().get(), Variant{}};
            truth.categories[r.id] = gs_source ? CategoryValue::ScopusOnlyGsSource : CategoryValue::ScopusOnlyNoGsSource;
            ++scopus_citers[t];
            out.scopus.push_back(std::move(r));
        }
    }

    // Target citation counts follow the number of citing works in each database.
    for (std::size_t t = 0; t < target_ids.size(); ++t) {
        const auto extra = rng_.uniform_int(0, 2 * std::max<std::int64_t>(1, gs_citers[t]));
        for (auto &r : out.gs_search) {
            if (r.id == target_ids[t].search)
                r.citation_count = gs_citers[t] + extra;
        }
        for (auto &r : out.gs_metrics) {
            if (r.id == target_ids[t].metrics)
                r.citation_count = gs_citers[t] + extra / 2;
        }
        for (auto &r : out.scopus) {
            if (r.id == target_ids[t].scopus)
                r.citation_count = scopus_citers[t] + extra / 3;
        }
    }

    plant_duplicates(out.gs_search, Provenance::GsSearch, made_search);
    plant_duplicates(out.gs_metrics, Provenance::GsMetrics, made_metrics);
    plant_duplicates(out.scopus, Provenance::Scopus, made_scopus);
    truth.duplicates = std::move(planted_);

    if (config_.delay) {
        truth.planted_median_delay_days = static_cast<int>(std::lround(config_.delay->quantile(0.5)));
        truth.planted_q3_delay_days = static_cast<int>(std::lround(config_.delay->quantile(0.75)));
    }
    for (const auto *corpus : {&out.gs_search, &out.gs_metrics, &out.scopus}) {
        for (const auto &r : *corpus)
            truth.all_ids.insert(r.id);
    }
    return out;
}

void Generator::plant_duplicates(Corpus &corpus, Provenance p,
                                 const std::map<RecordId, std::pair<const Work *, Variant>> &made) {
    if (config_.duplicate_rate <= 0.0)
        return;
    const auto &n = config_.noise;
    const std::size_t originals = corpus.size();
    for (std::size_t i = 0; i < originals; ++i) {
        const auto it = made.find(corpus[i].id);
        if (it == made.end() || !rng_.chance(config_.duplicate_rate))
            continue;
        const auto &[work, original] = it->second;
        Variant v = original;
        if (n.diacritics && rng_.chance(n.rate))
            v.accents = true;
        if (n.drop_short_tokens && rng_.chance(n.rate))
            v.drop_short = true;
        if (n.author_reformat && rng_.chance(n.rate))
            v.reformat_authors = !original.reformat_authors;
        if (n.missing_source && rng_.chance(n.rate))
            v.missing_source = true;
        int shift = 0;
        if (n.year_shift != 0 && rng_.chance(n.rate)) {
            shift = n.year_shift;
            v.year_delta = original.year_delta + (rng_.chance(0.5) ? shift : -shift);
        }

        auto dup = render(*work, v, p, RecordKind::Citing, corpus[i].cites_target);
        dup.id = next_id();
        dup.entry_age_days = corpus[i].entry_age_days;
        dup.citation_count = corpus[i].citation_count;
        dup.is_citation_stub = corpus[i].is_citation_stub;

        Similarity expected = Similarity::Identical;
        if (shift != 0 && !original.missing_year)
            expected = shift <= Thresholds{}.max_year_gap ? Similarity::Large : Similarity::Low;
        planted_.push_back({p, corpus[i].id, dup.id, expected});
        corpus.push_back(std::move(dup));
    }
}

} // namespace

double SynthRng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t SynthRng::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo)
        return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
}

DelayModel::DelayModel(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2)
        throw ConfigError("delay model needs at least two knots");
    if (knots_.front().second != 0.0 || knots_.back().second != 1.0)
        throw ConfigError("delay model must run from probability 0 to 1");
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (knots_[i].first <= knots_[i - 1].first || knots_[i].second < knots_[i - 1].second)
            throw ConfigError("delay model knots must increase");
    }
}

DelayModel DelayModel::from_quartiles(double median_days, double q3_days, double max_days) {
    return DelayModel({{0.0, 0.0}, {median_days, 0.5}, {q3_days, 0.75}, {max_days, 1.0}});
}

double DelayModel::cdf(double days) const {
    if (days <= knots_.front().first)
        return knots_.front().second;
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        const auto &[x0, p0] = knots_[i - 1];
        const auto &[x1, p1] = knots_[i];
        if (days <= x1)
            return p0 + (p1 - p0) * (days - x0) / (x1 - x0);
    }
    return 1.0;
}

double DelayModel::quantile(double p) const {
    p = std::clamp(p, 0.0, 1.0);
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        const auto &[x0, p0] = knots_[i - 1];
        const auto &[x1, p1] = knots_[i];
        if (p <= p1) {
            if (p1 == p0)
                return x0;
            return x0 + (x1 - x0) * (p - p0) / (p1 - p0);
        }
    }
    return knots_.back().first;
}

void SynthConfig::validate() const {
    auto probability = [](double v, const char *name) {
        if (!(v >= 0.0 && v <= 1.0))
            throw ConfigError(std::string(name) + " must lie in [0, 1]");
    };
    probability(overlap_fraction, "overlap_fraction");
    probability(duplicate_rate, "duplicate_rate");
    probability(noise.rate, "noise.rate");
    probability(cross_language_rate, "cross_language_rate");
    probability(scopus_source_fraction, "scopus_source_fraction");
    probability(aip_publisher_fraction, "aip_publisher_fraction");
    probability(gs_search_only_rate, "gs_search_only_rate");
    probability(gs_metrics_only_rate, "gs_metrics_only_rate");
    probability(missing_year_rate, "missing_year_rate");
    if (n_targets < 0 || n_journals < 1)
        throw ConfigError("n_targets must be >= 0 and n_journals >= 1");
    if (citers_min < 0 || citers_max < citers_min)
        throw ConfigError("citers_min/citers_max must satisfy 0 <= min <= max");
    if (noise.year_shift < 0)
        throw ConfigError("noise.year_shift must be >= 0");
}

std::set<RecordId> GroundTruth::expected_removed() const {
    std::set<RecordId> out;
    for (const auto &d : duplicates) {
        if (d.expected != Similarity::Low)
            out.insert(d.duplicate);
    }
    return out;
}

SynthCorpora generate(const SynthConfig &config) { return Generator(config).run(); }

DelayCohort generate_delay_cohort(const DelayCohortConfig &config) {
    if (config.docs_per_day <= 0 || config.horizon_days <= 0)
        throw ConfigError("docs_per_day and horizon_days must be positive");
    DelayCohort out;
    out.planted_median_days = static_cast<int>(std::lround(config.delay.quantile(0.5)));
    out.planted_q3_days = static_cast<int>(std::lround(config.delay.quantile(0.75)));

    const int scopus_docs = static_cast<int>(std::lround(config.scopus_source_share * config.docs_per_day));
    const int other_docs = config.docs_per_day - scopus_docs;
    for (int age = 0; age < config.horizon_days; ++age) {
        for (int j = 0; j < other_docs; ++j)
            out.docs.push_back({age, OverlapCategory::make(CategoryValue::GsOnlyNoScopusSource), false});
        int pending = 0;
        for (int j = 0; j < scopus_docs; ++j) {
            const double delay = config.delay.quantile((j + 0.5) / scopus_docs);
            if (delay <= age) {
                out.docs.push_back({age, OverlapCategory::make(CategoryValue::Both), true});
                continue;
            }
            // Spread AIP publishers evenly over the documents still pending.
            const bool aip = std::floor((pending + 1) * config.aip_share) > std::floor(pending * config.aip_share);
            ++pending;
            out.docs.push_back({age,
                                OverlapCategory::make(CategoryValue::GsOnlyScopusSource,
                                                      aip ? AipSplit::PossibleAip : AipSplit::NotAip),
                                true});
        }
    }
    return out;
}

} // namespace citelink
