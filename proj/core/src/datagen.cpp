#include "chaindrift/datagen.hpp"

#include <array>
#include <cmath>

#include "chaindrift/rng.hpp"

namespace chaindrift::mcp {

namespace {

constexpr int kRowsPerDomain = 25;
constexpr int kTemplatesPerDomain = 5;

struct SciRow {
  const char* element;
  const char* symbol;
  int z;
  int year;
  const char* category;
  const char* mass;
};
constexpr std::array<SciRow, kRowsPerDomain> kScience{{
    {"hydrogen", "h", 1, 1766, "nonmetal", "1.008"},
    {"helium", "he", 2, 1868, "noble gas", "4.003"},
    {"lithium", "li", 3, 1817, "alkali metal", "6.94"},
    {"beryllium", "be", 4, 1798, "alkaline earth", "9.012"},
    {"boron", "b", 5, 1808, "metalloid", "10.81"},
    {"nitrogen", "n", 7, 1772, "nonmetal", "14.007"},
    {"oxygen", "o", 8, 1774, "nonmetal", "15.999"},
    {"fluorine", "f", 9, 1886, "halogen", "18.998"},
    {"neon", "ne", 10, 1898, "noble gas", "20.18"},
    {"sodium", "na", 11, 1807, "alkali metal", "22.99"},
    {"magnesium", "mg", 12, 1808, "alkaline earth", "24.305"},
    {"aluminium", "al", 13, 1825, "post transition", "26.982"},
    {"silicon", "si", 14, 1824, "metalloid", "28.085"},
    {"phosphorus", "p", 15, 1669, "nonmetal", "30.974"},
    {"chlorine", "cl", 17, 1774, "halogen", "35.45"},
    {"argon", "ar", 18, 1894, "noble gas", "39.948"},
    {"potassium", "k", 19, 1807, "alkali metal", "39.098"},
    {"calcium", "ca", 20, 1808, "alkaline earth", "40.078"},
    {"titanium", "ti", 22, 1791, "transition metal", "47.867"},
    {"chromium", "cr", 24, 1797, "transition metal", "51.996"},
    {"manganese", "mn", 25, 1774, "transition metal", "54.938"},
    {"nickel", "ni", 28, 1751, "transition metal", "58.693"},
    {"zinc", "zn", 30, 1746, "transition metal", "65.38"},
    {"bromine", "br", 35, 1826, "halogen", "79.904"},
    {"krypton", "kr", 36, 1898, "noble gas", "83.798"},
}};

struct HistRow {
  const char* event;
  int start_year;
  int end_year;
  const char* country;
  const char* leader;
};
constexpr std::array<HistRow, kRowsPerDomain> kHistory{{
    {"french revolution", 1789, 1799, "france", "napoleon bonaparte"},
    {"american revolution", 1775, 1783, "america", "george washington"},
    {"russian revolution", 1917, 1923, "russia", "vladimir lenin"},
    {"industrial revolution", 1760, 1840, "britain", "james watt"},
    {"cold war", 1947, 1991, "europe", "ronald reagan"},
    {"great depression", 1929, 1939, "america", "franklin roosevelt"},
    {"space race", 1955, 1975, "america", "wernher von braun"},
    {"crimean war", 1853, 1856, "russia", "florence nightingale"},
    {"napoleonic wars", 1803, 1815, "france", "napoleon bonaparte"},
    {"byzantine empire", 330, 1453, "greece", "emperor justinian"},
    {"ottoman empire", 1299, 1922, "turkey", "sultan suleiman"},
    {"mongol empire", 1206, 1368, "mongolia", "genghis khan"},
    {"british empire", 1583, 1997, "britain", "queen victoria"},
    {"holy roman empire", 800, 1806, "germany", "emperor charlemagne"},
    {"ming dynasty", 1368, 1644, "china", "emperor hongwu"},
    {"qing dynasty", 1636, 1912, "china", "emperor kangxi"},
    {"meiji restoration", 1868, 1889, "japan", "emperor meiji"},
    {"protestant reformation", 1517, 1648, "germany", "martin luther"},
    {"scientific revolution", 1543, 1687, "europe", "isaac newton"},
    {"enlightenment era", 1685, 1815, "france", "denis diderot"},
    {"victorian era", 1837, 1901, "britain", "queen victoria"},
    {"gilded age", 1870, 1900, "america", "andrew carnegie"},
    {"spanish civil war", 1936, 1939, "spain", "francisco franco"},
    {"cuban revolution", 1953, 1959, "cuba", "fidel castro"},
    {"glorious revolution", 1688, 1689, "england", "king william"},
}};

struct TechRow {
  const char* lang;
  int year;
  const char* creator;
};
constexpr std::array<TechRow, kRowsPerDomain> kTechnology{{
    {"python", 1991, "guido van rossum"},
    {"java", 1995, "james gosling"},
    {"javascript", 1995, "brendan eich"},
    {"ruby", 1995, "yukihiro matsumoto"},
    {"perl", 1987, "larry wall"},
    {"php", 1995, "rasmus lerdorf"},
    {"lua", 1993, "roberto ierusalimschy"},
    {"haskell", 1990, "simon peyton jones"},
    {"erlang", 1986, "joe armstrong"},
    {"scala", 2004, "martin odersky"},
    {"clojure", 2007, "rich hickey"},
    {"kotlin", 2011, "andrey breslav"},
    {"swift", 2014, "chris lattner"},
    {"rust", 2010, "graydon hoare"},
    {"go", 2009, "rob pike"},
    {"dart", 2011, "lars bak"},
    {"julia", 2012, "jeff bezanson"},
    {"fortran", 1957, "john backus"},
    {"lisp", 1958, "john mccarthy"},
    {"pascal", 1970, "niklaus wirth"},
    {"smalltalk", 1972, "alan kay"},
    {"prolog", 1972, "alain colmerauer"},
    {"ada", 1980, "jean ichbiah"},
    {"matlab", 1984, "cleve moler"},
    {"typescript", 2012, "anders hejlsberg"},
}};

struct ArtRow {
  const char* painting;
  const char* artist;
  int year;
  const char* museum;
  const char* city;
};
constexpr std::array<ArtRow, kRowsPerDomain> kArts{{
    {"mona lisa", "leonardo da vinci", 1503, "louvre museum", "paris"},
    {"starry night", "vincent van gogh", 1889, "modern art museum", "new york"},
    {"scream", "edvard munch", 1893, "national museum", "oslo"},
    {"last supper", "leonardo da vinci", 1498, "santa maria convent", "milan"},
    {"guernica", "pablo picasso", 1937, "reina sofia museum", "madrid"},
    {"water lilies", "claude monet", 1919, "orangerie museum", "paris"},
    {"blue dancers", "edgar degas", 1899, "orsay museum", "paris"},
    {"night watch", "rembrandt van rijn", 1642, "rijksmuseum", "amsterdam"},
    {"sunflowers", "vincent van gogh", 1888, "national gallery", "london"},
    {"irises", "vincent van gogh", 1889, "getty center", "los angeles"},
    {"olympia", "edouard manet", 1863, "orsay museum", "paris"},
    {"impression sunrise", "claude monet", 1872, "marmottan museum", "paris"},
    {"las meninas", "diego velazquez", 1656, "prado museum", "madrid"},
    {"primavera", "sandro botticelli", 1482, "uffizi gallery", "florence"},
    {"nighthawks", "edward hopper", 1942, "art institute", "chicago"},
    {"great wave", "katsushika hokusai", 1831, "metropolitan museum", "new york"},
    {"kiss", "gustav klimt", 1908, "belvedere palace", "vienna"},
    {"card players", "paul cezanne", 1895, "courtauld gallery", "london"},
    {"potato eaters", "vincent van gogh", 1885, "van gogh museum", "amsterdam"},
    {"arnolfini portrait", "jan van eyck", 1434, "national gallery", "london"},
    {"ghent altarpiece", "jan van eyck", 1432, "bavo cathedral", "ghent"},
    {"sistine madonna", "raphael sanzio", 1512, "alte meister gallery", "dresden"},
    {"broadway boogie woogie", "piet mondrian", 1943, "modern art museum", "new york"},
    {"haywain triptych", "hieronymus bosch", 1516, "prado museum", "madrid"},
    {"milkmaid", "johannes vermeer", 1658, "rijksmuseum", "amsterdam"},
}};

struct SportRow {
  int oly_year;
  const char* oly_city;
  const char* nationality;
  const char* tournament;
  int t_year;
  const char* athlete;
  const char* sport;
  int ath_year;
};
constexpr std::array<SportRow, kRowsPerDomain> kSports{{
    {1896, "athens", "uruguayan", "football world cup", 1930, "usain bolt", "sprint", 2009},
    {1900, "paris", "italian", "football world cup", 1934, "michael phelps", "swimming", 2008},
    {1904, "saint louis", "italian", "football world cup", 1938, "serena williams", "tennis", 2015},
    {1908, "london", "uruguayan", "football world cup", 1950, "roger federer", "tennis", 2007},
    {1912, "stockholm", "german", "football world cup", 1954, "rafael nadal", "tennis", 2010},
    {1920, "antwerp", "brazilian", "football world cup", 1958, "simone biles", "gymnastics", 2019},
    {1924, "paris", "brazilian", "football world cup", 1962, "michael jordan", "basketball", 1996},
    {1928, "amsterdam", "english", "football world cup", 1966, "lionel messi", "football", 2012},
    {1932, "los angeles", "brazilian", "football world cup", 1970, "cristiano ronaldo", "football", 2016},
    {1936, "berlin", "german", "football world cup", 1974, "lewis hamilton", "racing", 2020},
    {1948, "london", "argentine", "football world cup", 1978, "eliud kipchoge", "marathon", 2019},
    {1952, "helsinki", "italian", "football world cup", 1982, "katie ledecky", "swimming", 2016},
    {1956, "melbourne", "argentine", "football world cup", 1986, "novak djokovic", "tennis", 2021},
    {1960, "rome", "german", "football world cup", 1990, "steffi graf", "tennis", 1988},
    {1964, "tokyo", "brazilian", "football world cup", 1994, "carl lewis", "sprint", 1984},
    {1968, "mexico city", "french", "football world cup", 1998, "jesse owens", "sprint", 1936},
    {1972, "munich", "brazilian", "football world cup", 2002, "nadia comaneci", "gymnastics", 1976},
    {1976, "montreal", "italian", "football world cup", 2006, "diego maradona", "football", 1986},
    {1980, "moscow", "spanish", "football world cup", 2010, "wayne gretzky", "hockey", 1985},
    {1984, "los angeles", "german", "football world cup", 2014, "babe ruth", "baseball", 1927},
    {1988, "seoul", "french", "football world cup", 2018, "muhammad ali", "boxing", 1964},
    {1992, "barcelona", "argentine", "football world cup", 2022, "bjorn borg", "tennis", 1980},
    {1996, "atlanta", "spanish", "european championship", 2012, "martina navratilova", "tennis", 1986},
    {2000, "sydney", "italian", "european championship", 2021, "jackie robinson", "baseball", 1949},
    {2004, "athens", "chilean", "copa america tournament", 2015, "mo farah", "running", 2012},
}};

struct GeoRow {
  const char* country;
  const char* nationality;
  const char* capital;
  const char* continent;
  const char* river;
  const char* mountain;
};
constexpr std::array<GeoRow, kRowsPerDomain> kGeography{{
    {"france", "french", "paris", "europe", "loire", "mont blanc"},
    {"germany", "german", "berlin", "europe", "rhine", "zugspitze"},
    {"spain", "spanish", "madrid", "europe", "ebro", "teide"},
    {"italy", "italian", "rome", "europe", "po", "monte rosa"},
    {"japan", "japanese", "tokyo", "asia", "shinano", "mount fuji"},
    {"china", "chinese", "beijing", "asia", "yangtze", "mount everest"},
    {"india", "indian", "new delhi", "asia", "ganges", "kangchenjunga"},
    {"brazil", "brazilian", "brasilia", "south america", "amazon", "pico da neblina"},
    {"egypt", "egyptian", "cairo", "africa", "nile", "mount sinai"},
    {"canada", "canadian", "ottawa", "north america", "mackenzie", "mount logan"},
    {"australia", "australian", "canberra", "oceania", "murray", "mount kosciuszko"},
    {"russia", "russian", "moscow", "europe", "volga", "mount elbrus"},
    {"america", "american", "washington", "north america", "mississippi", "denali"},
    {"mexico", "mexican", "mexico city", "north america", "rio grande", "pico de orizaba"},
    {"argentina", "argentine", "buenos aires", "south america", "parana", "aconcagua"},
    {"chile", "chilean", "santiago", "south america", "loa", "ojos del salado"},
    {"peru", "peruvian", "lima", "south america", "ucayali", "huascaran"},
    {"norway", "norwegian", "oslo", "europe", "glomma", "galdhopiggen"},
    {"sweden", "swedish", "stockholm", "europe", "torne", "kebnekaise"},
    {"finland", "finnish", "helsinki", "europe", "kemijoki", "halti"},
    {"poland", "polish", "warsaw", "europe", "vistula", "rysy"},
    {"greece", "greek", "athens", "europe", "aliakmon", "mount olympus"},
    {"turkey", "turkish", "ankara", "asia", "kizilirmak", "mount ararat"},
    {"kenya", "kenyan", "nairobi", "africa", "tana", "mount kenya"},
    {"nigeria", "nigerian", "abuja", "africa", "niger", "chappal waddi"},
}};

struct LitRow {
  const char* novel;
  const char* author;
  int year;
  const char* genre;
};
constexpr std::array<LitRow, kRowsPerDomain> kLiterature{{
    {"moby dick", "herman melville", 1851, "adventure"},
    {"don quixote", "miguel de cervantes", 1605, "picaresque"},
    {"jane eyre", "charlotte bronte", 1847, "gothic"},
    {"wuthering heights", "emily bronte", 1847, "gothic"},
    {"anna karenina", "leo tolstoy", 1877, "realist"},
    {"madame bovary", "gustave flaubert", 1856, "realist"},
    {"great expectations", "charles dickens", 1861, "victorian"},
    {"oliver twist", "charles dickens", 1838, "victorian"},
    {"brave new world", "aldous huxley", 1932, "dystopian"},
    {"brothers karamazov", "fyodor dostoevsky", 1880, "philosophical"},
    {"emma", "jane austen", 1815, "romantic"},
    {"persuasion", "jane austen", 1817, "romantic"},
    {"great gatsby", "scott fitzgerald", 1925, "modernist"},
    {"ulysses", "james joyce", 1922, "modernist"},
    {"dubliners", "james joyce", 1914, "modernist"},
    {"mrs dalloway", "virginia woolf", 1925, "modernist"},
    {"invisible man", "ralph ellison", 1952, "modernist"},
    {"beloved", "toni morrison", 1987, "historical"},
    {"middlemarch", "george eliot", 1871, "victorian"},
    {"dracula", "bram stoker", 1897, "gothic"},
    {"frankenstein", "mary shelley", 1818, "gothic"},
    {"treasure island", "robert louis stevenson", 1883, "adventure"},
    {"robinson crusoe", "daniel defoe", 1719, "adventure"},
    {"tom sawyer", "mark twain", 1876, "adventure"},
    {"les miserables", "victor hugo", 1862, "historical"},
}};

struct MathRow {
  const char* topic;
  const char* person;
  int year;
  const char* field;
};
constexpr std::array<MathRow, kRowsPerDomain> kMathematics{{
    {"binomial theorem", "isaac newton", 1665, "algebra"},
    {"normal distribution", "carl gauss", 1809, "probability"},
    {"euler formula", "leonhard euler", 1748, "analysis"},
    {"coordinate system", "rene descartes", 1637, "geometry"},
    {"pascal triangle", "blaise pascal", 1653, "combinatorics"},
    {"differential calculus", "gottfried leibniz", 1684, "analysis"},
    {"riemann hypothesis", "bernhard riemann", 1859, "analysis"},
    {"hilbert space", "david hilbert", 1906, "analysis"},
    {"noether theorem", "emmy noether", 1915, "algebra"},
    {"incompleteness theorem", "kurt godel", 1931, "logic"},
    {"turing machine", "alan turing", 1936, "computation"},
    {"nash equilibrium", "john nash", 1950, "economics"},
    {"modularity theorem", "andrew wiles", 1995, "arithmetic"},
    {"compressed sensing method", "terence tao", 2006, "statistics"},
    {"germain identity", "sophie germain", 1821, "arithmetic"},
    {"fourier series", "joseph fourier", 1807, "analysis"},
    {"galois correspondence", "evariste galois", 1832, "algebra"},
    {"abel theorem", "niels abel", 1824, "algebra"},
    {"diagonal argument", "georg cantor", 1891, "logic"},
    {"dedekind cut", "richard dedekind", 1872, "analysis"},
    {"klein bottle", "felix klein", 1882, "topology"},
    {"poincare conjecture", "henri poincare", 1904, "topology"},
    {"partition formula", "srinivasa ramanujan", 1918, "arithmetic"},
    {"minimax theorem", "john von neumann", 1928, "economics"},
    {"little theorem", "pierre fermat", 1640, "arithmetic"},
}};

std::string cap(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string num(int v) { return std::to_string(v); }

std::string entry_id(const char* prefix, int ordinal) {
  std::string n = std::to_string(ordinal);
  while (n.size() < 3) n.insert(n.begin(), '0');
  return std::string(prefix) + "_" + n;
}

// 20..64 (thousands of runners), varies with the row index
int runner_count(int row) { return 20 + (row * 7) % 45; }

template <typename Table, typename Render>
void emit_domain(std::vector<CorpusEntry>& out, const char* prefix, const char* domain,
                 const Table& table, Render&& render) {
  int ordinal = 1;
  for (int t = 0; t < kTemplatesPerDomain; ++t) {
    for (int r = 0; r < kRowsPerDomain; ++r) {
      out.push_back(CorpusEntry{entry_id(prefix, ordinal), domain, render(t, table[r], r)});
      ++ordinal;
    }
  }
}

}  // namespace

std::vector<CorpusEntry> generate_corpus() {
  std::vector<CorpusEntry> out;
  out.reserve(1000);

  emit_domain(out, "sci", "Science", kScience, [](int t, const SciRow& r, int) -> std::string {
    switch (t) {
      case 0: return "The chemical element " + std::string(r.element) + " has the symbol " + r.symbol + ".";
      case 1: return "The atomic number of the element " + std::string(r.element) + " equals " + num(r.z) + ".";
      case 2: return "The element " + std::string(r.element) + " was discovered in the year " + num(r.year) + ".";
      case 3: return "The element " + std::string(r.element) + " belongs to the " + r.category + " group.";
      default: return "The molar mass of " + std::string(r.element) + " is approximately " + r.mass + " grams per mole.";
    }
  });

  emit_domain(out, "hist", "History", kHistory, [](int t, const HistRow& r, int) -> std::string {
    switch (t) {
      case 0: return "The " + std::string(r.event) + " began in the year " + num(r.start_year) + ".";
      case 1: return "The " + std::string(r.event) + " ended in the year " + num(r.end_year) + ".";
      case 2: return cap(r.leader) + " shaped the " + r.event + ".";
      case 3: return "The " + std::string(r.event) + " reshaped the political history of " + r.country + ".";
      default: return "Historians place the " + std::string(r.event) + " in the year " + num(r.start_year) + ".";
    }
  });

  emit_domain(out, "tech", "Technology", kTechnology, [](int t, const TechRow& r, int) -> std::string {
    switch (t) {
      case 0: return "The " + std::string(r.lang) + " programming language was released in the year " + num(r.year) + ".";
      case 1: return cap(r.creator) + " designed the " + r.lang + " programming language.";
      case 2: return "The " + std::string(r.lang) + " language is maintained by a large developer community.";
      case 3: return "The official website of " + std::string(r.lang) + " documents the " + r.lang + " standard library.";
      default: return cap(r.creator) + " started the " + r.lang + " project in the year " + num(r.year) + ".";
    }
  });

  emit_domain(out, "arts", "Arts", kArts, [](int t, const ArtRow& r, int) -> std::string {
    switch (t) {
      case 0: return "The painting " + std::string(r.painting) + " was created by " + r.artist + ".";
      case 1: return cap(r.artist) + " painted the " + r.painting + " in the year " + num(r.year) + ".";
      case 2: return "The " + std::string(r.painting) + " hangs in the " + r.museum + ".";
      case 3: return "The " + std::string(r.museum) + " in " + r.city + " displays the " + r.painting + ".";
      default: return cap(r.artist) + " completed the " + r.painting + " in " + r.city + ".";
    }
  });

  emit_domain(out, "sports", "Sports", kSports, [](int t, const SportRow& r, int row) -> std::string {
    switch (t) {
      case 0: return "The olympic games of the year " + num(r.oly_year) + " were held in " + r.oly_city + ".";
      case 1: return "The " + std::string(r.nationality) + " national team won the " + r.tournament + " in the year " + num(r.t_year) + ".";
      case 2: return cap(r.athlete) + " won the " + r.sport + " championship in the year " + num(r.ath_year) + ".";
      case 3: return "The " + std::string(r.oly_city) + " marathon attracts nearly " + num(runner_count(row)) + " thousand runners every year.";
      default: return "The olympic games of the year " + num(r.oly_year) + " featured the " + r.sport + " competition.";
    }
  });

  emit_domain(out, "geo", "Geography", kGeography, [](int t, const GeoRow& r, int) -> std::string {
    switch (t) {
      case 0: return "The " + std::string(r.nationality) + " capital city is " + r.capital + ".";
      case 1: return "The longest river in " + std::string(r.country) + " is the " + r.river + " river.";
      case 2: return "The highest " + std::string(r.nationality) + " mountain is " + r.mountain + ".";
      case 3: return "The " + std::string(r.nationality) + " nation lies in " + r.continent + ".";
      default: return "The " + std::string(r.river) + " river flows through " + r.country + ".";
    }
  });

  emit_domain(out, "lit", "Literature", kLiterature, [](int t, const LitRow& r, int) -> std::string {
    switch (t) {
      case 0: return "The novel " + std::string(r.novel) + " was written by " + r.author + ".";
      case 1: return cap(r.author) + " published the novel " + r.novel + " in the year " + num(r.year) + ".";
      case 2: return "The novel " + std::string(r.novel) + " belongs to the " + r.genre + " genre.";
      case 3: return cap(r.author) + " wrote the celebrated novel " + r.novel + ".";
      default: return "Readers praise the novel " + std::string(r.novel) + " for its " + r.genre + " style.";
    }
  });

  emit_domain(out, "math", "Mathematics", kMathematics, [](int t, const MathRow& r, int) -> std::string {
    switch (t) {
      case 0: return "The " + std::string(r.topic) + " was formulated by " + r.person + " in the year " + num(r.year) + ".";
      case 1: return cap(r.person) + " studied problems in modern " + r.field + ".";
      case 2: return "The " + std::string(r.topic) + " is a cornerstone of classical " + r.field + ".";
      case 3: return "The " + std::string(r.topic) + " first appeared in the year " + num(r.year) + ".";
      default: return "Students learn the " + std::string(r.topic) + " in courses on advanced " + r.field + ".";
    }
  });

  return out;
}

std::vector<std::string> snapshot_dates() {
  std::vector<std::string> dates;
  for (int day = 1; day <= 31; ++day) {
    if ((day - 1) % 7 >= 5) continue;  // 2024-01-01 is a Monday; skip weekends
    std::string d = std::to_string(day);
    if (d.size() < 2) d.insert(d.begin(), '0');
    dates.push_back("2024-01-" + d);
  }
  return dates;
}

MarketSnapshot generate_snapshot(std::uint64_t seed) {
  constexpr std::array<double, 10> kBasePrice = {185.0, 390.0, 140.0, 155.0, 240.0,
                                                 350.0, 550.0, 170.0, 260.0, 160.0};
  const auto dates = snapshot_dates();
  const auto round_cents = [](double v) { return std::round(v * 100.0) / 100.0; };

  MarketSnapshot snap;
  for (std::size_t s = 0; s < kSymbols.size(); ++s) {
    CounterRng rng = CounterRng::for_stream(seed, s);
    double prev_close = kBasePrice[s];
    for (const auto& date : dates) {
      const double gap = (rng.next_unit() - 0.5) * 0.01;
      const double ret = (rng.next_unit() - 0.5) * 0.04;
      double open = prev_close * (1.0 + gap);
      double close = prev_close * (1.0 + ret);
      // bounded walk: keep prices within a band around the base
      close = std::min(std::max(close, kBasePrice[s] * 0.5), kBasePrice[s] * 2.0);

      PriceBar bar;
      bar.open = round_cents(open);
      bar.close = round_cents(close);
      const double hi_pad = rng.next_unit() * 0.01;
      const double lo_pad = rng.next_unit() * 0.01;
      bar.high = round_cents(std::max(open, close) * (1.0 + hi_pad));
      bar.low = round_cents(std::min(open, close) * (1.0 - lo_pad));
      bar.high = std::max({bar.high, bar.open, bar.close});
      bar.low = std::min({bar.low, bar.open, bar.close});
      bar.volume = 1'000'000 + static_cast<std::int64_t>(rng.next_below(9'000'000));
      bar.timestamp = date + "T16:00:00-05:00";

      snap.prices[kSymbols[s]][date] = std::move(bar);
      prev_close = close;
    }
  }
  snap.validate();
  return snap;
}

const std::vector<std::string>& seed_questions() {
  static const std::vector<std::string> questions = [] {
    std::vector<std::string> q;
    q.reserve(425);
    for (const auto& r : kScience) {
      q.push_back("What is the atomic number of " + std::string(r.element) + "?");
      q.push_back("When was the element " + std::string(r.element) + " discovered?");
      q.push_back("Which group does the element " + std::string(r.element) + " belong to?");
    }
    for (const auto& r : kHistory) {
      q.push_back("When did the " + std::string(r.event) + " begin?");
      q.push_back("Who shaped the " + std::string(r.event) + "?");
    }
    for (const auto& r : kTechnology) {
      q.push_back("When was the " + std::string(r.lang) + " programming language released?");
      q.push_back("Who designed the " + std::string(r.lang) + " programming language?");
    }
    for (const auto& r : kArts) {
      q.push_back("Who painted the " + std::string(r.painting) + "?");
      q.push_back("Where does the " + std::string(r.painting) + " hang?");
    }
    for (const auto& r : kSports) {
      q.push_back("Where were the olympic games of the year " + num(r.oly_year) + " held?");
      q.push_back("Who won the " + std::string(r.sport) + " championship in the year " +
                  num(r.ath_year) + "?");
    }
    for (const auto& r : kGeography) {
      q.push_back("What is the " + std::string(r.nationality) + " capital city?");
      q.push_back("Which river flows through " + std::string(r.country) + "?");
    }
    for (const auto& r : kLiterature) {
      q.push_back("Who wrote the novel " + std::string(r.novel) + "?");
      q.push_back("When was the novel " + std::string(r.novel) + " published?");
    }
    for (const auto& r : kMathematics) {
      q.push_back("Who formulated the " + std::string(r.topic) + "?");
      q.push_back("When did the " + std::string(r.topic) + " first appear?");
    }
    return q;
  }();
  return questions;
}

}  // namespace chaindrift::mcp
