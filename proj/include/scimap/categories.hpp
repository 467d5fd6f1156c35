#pragma once

// Shipped category data: the 224 active Web of Science categories in
// alphabetical order ("Biology, Miscellaneous" is inactive and omitted), and
// the split of the former computer-science factor into two groups.

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scimap/core.hpp"

namespace scimap {

inline constexpr std::size_t kDefaultCategoryCount = 224;

inline const std::vector<std::string>& default_category_labels() {
  static const std::vector<std::string> labels = {
      "Acoustics",
      "Agricultural Economics & Policy",
      "Agricultural Engineering",
      "Agriculture, Dairy & Animal Science",
      "Agriculture, Multidisciplinary",
      "Agronomy",
      "Allergy",
      "Anatomy & Morphology",
      "Andrology",
      "Anesthesiology",
      "Anthropology",
      "Area Studies",
      "Astronomy & Astrophysics",
      "Audiology & Speech-Language Pathology",
      "Automation & Control Systems",
      "Behavioral Sciences",
      "Biochemical Research Methods",
      "Biochemistry & Molecular Biology",
      "Biodiversity Conservation",
      "Biology",
      "Biophysics",
      "Biotechnology & Applied Microbiology",
      "Business",
      "Business, Finance",
      "Cardiac & Cardiovascular Systems",
      "Cell & Tissue Engineering",
      "Cell Biology",
      "Chemistry, Analytical",
      "Chemistry, Applied",
      "Chemistry, Inorganic & Nuclear",
      "Chemistry, Medicinal",
      "Chemistry, Multidisciplinary",
      "Chemistry, Organic",
      "Chemistry, Physical",
      "Clinical Neurology",
      "Communication",
      "Computer Science, Artificial Intelligence",
      "Computer Science, Cybernetics",
      "Computer Science, Hardware & Architecture",
      "Computer Science, Information Systems",
      "Computer Science, Interdisciplinary Applications",
      "Computer Science, Software Engineering",
      "Computer Science, Theory & Methods",
      "Construction & Building Technology",
      "Criminology & Penology",
      "Critical Care Medicine",
      "Crystallography",
      "Cultural Studies",
      "Demography",
      "Dentistry, Oral Surgery & Medicine",
      "Dermatology",
      "Developmental Biology",
      "Ecology",
      "Economics",
      "Education & Educational Research",
      "Education, Scientific Disciplines",
      "Education, Special",
      "Electrochemistry",
      "Emergency Medicine",
      "Endocrinology & Metabolism",
      "Energy & Fuels",
      "Engineering, Aerospace",
      "Engineering, Biomedical",
      "Engineering, Chemical",
      "Engineering, Civil",
      "Engineering, Electrical & Electronic",
      "Engineering, Environmental",
      "Engineering, Geological",
      "Engineering, Industrial",
      "Engineering, Manufacturing",
      "Engineering, Marine",
      "Engineering, Mechanical",
      "Engineering, Multidisciplinary",
      "Engineering, Ocean",
      "Engineering, Petroleum",
      "Entomology",
      "Environmental Sciences",
      "Environmental Studies",
      "Ergonomics",
      "Ethics",
      "Ethnic Studies",
      "Evolutionary Biology",
      "Family Studies",
      "Fisheries",
      "Food Science & Technology",
      "Forestry",
      "Gastroenterology & Hepatology",
      "Genetics & Heredity",
      "Geochemistry & Geophysics",
      "Geography",
      "Geography, Physical",
      "Geology",
      "Geosciences, Multidisciplinary",
      "Geriatrics & Gerontology",
      "Gerontology",
      "Health Care Sciences & Services",
      "Health Policy & Services",
      "Hematology",
      "History",
      "History & Philosophy of Science",
      "History of Social Sciences",
      "Horticulture",
      "Hospitality, Leisure, Sport & Tourism",
      "Imaging Science & Photographic Technology",
      "Immunology",
      "Industrial Relations & Labor",
      "Infectious Diseases",
      "Information Science & Library Science",
      "Instruments & Instrumentation",
      "Integrative & Complementary Medicine",
      "International Relations",
      "Law",
      "Limnology",
      "Linguistics",
      "Management",
      "Marine & Freshwater Biology",
      "Materials Science, Biomaterials",
      "Materials Science, Ceramics",
      "Materials Science, Characterization & Testing",
      "Materials Science, Coatings & Films",
      "Materials Science, Composites",
      "Materials Science, Multidisciplinary",
      "Materials Science, Paper & Wood",
      "Materials Science, Textiles",
      "Mathematical & Computational Biology",
      "Mathematics",
      "Mathematics, Applied",
      "Mathematics, Interdisciplinary Applications",
      "Mechanics",
      "Medical Ethics",
      "Medical Informatics",
      "Medical Laboratory Technology",
      "Medicine, General & Internal",
      "Medicine, Legal",
      "Medicine, Research & Experimental",
      "Metallurgy & Metallurgical Engineering",
      "Meteorology & Atmospheric Sciences",
      "Microbiology",
      "Microscopy",
      "Mineralogy",
      "Mining & Mineral Processing",
      "Multidisciplinary Sciences",
      "Mycology",
      "Nanoscience & Nanotechnology",
      "Neuroimaging",
      "Neurosciences",
      "Nuclear Science & Technology",
      "Nursing",
      "Nutrition & Dietetics",
      "Obstetrics & Gynecology",
      "Oceanography",
      "Oncology",
      "Operations Research & Management Science",
      "Ophthalmology",
      "Optics",
      "Ornithology",
      "Orthopedics",
      "Otorhinolaryngology",
      "Paleontology",
      "Parasitology",
      "Pathology",
      "Pediatrics",
      "Peripheral Vascular Disease",
      "Pharmacology & Pharmacy",
      "Physics, Applied",
      "Physics, Atomic, Molecular & Chemical",
      "Physics, Condensed Matter",
      "Physics, Fluids & Plasmas",
      "Physics, Mathematical",
      "Physics, Multidisciplinary",
      "Physics, Nuclear",
      "Physics, Particles & Fields",
      "Physiology",
      "Planning & Development",
      "Plant Sciences",
      "Political Science",
      "Polymer Science",
      "Psychiatry",
      "Psychology",
      "Psychology, Applied",
      "Psychology, Biological",
      "Psychology, Clinical",
      "Psychology, Developmental",
      "Psychology, Educational",
      "Psychology, Experimental",
      "Psychology, Mathematical",
      "Psychology, Multidisciplinary",
      "Psychology, Psychoanalysis",
      "Psychology, Social",
      "Public Administration",
      "Public, Environmental & Occupational Health",
      "Radiology, Nuclear Medicine & Medical Imaging",
      "Rehabilitation",
      "Remote Sensing",
      "Reproductive Biology",
      "Respiratory System",
      "Rheumatology",
      "Robotics",
      "Social Issues",
      "Social Sciences, Biomedical",
      "Social Sciences, Interdisciplinary",
      "Social Sciences, Mathematical Methods",
      "Social Work",
      "Sociology",
      "Soil Science",
      "Spectroscopy",
      "Sport Sciences",
      "Statistics & Probability",
      "Substance Abuse",
      "Surgery",
      "Telecommunications",
      "Thermodynamics",
      "Toxicology",
      "Transplantation",
      "Transportation",
      "Transportation Science & Technology",
      "Tropical Medicine",
      "Urban Studies",
      "Urology & Nephrology",
      "Veterinary Sciences",
      "Virology",
      "Water Resources",
      "Women's Studies",
      "Zoology",
  };
  return labels;
}

inline RegistryPtr default_registry() {
  static const RegistryPtr registry = std::make_shared<const CategoryRegistry>(default_category_labels());
  return registry;
}

inline constexpr std::string_view kComputerScience = "Computer Science";
inline constexpr std::string_view kMathematicalMethods = "Mathematical methods";

/// Categories of the "Computer Science" and "Mathematical methods" groups of
/// the 19-group partition. The remaining categories have no published
/// assignment and must come from a user-supplied partition file.
inline const std::vector<std::pair<std::string_view, std::string_view>>& computing_split() {
  static const std::vector<std::pair<std::string_view, std::string_view>> rows = {
      {"Computer Science, Hardware & Architecture", kComputerScience},
      {"Engineering, Electrical & Electronic", kComputerScience},
      {"Computer Science, Artificial Intelligence", kComputerScience},
      {"Computer Science, Theory & Methods", kComputerScience},
      {"Computer Science, Information Systems", kComputerScience},
      {"Telecommunications", kComputerScience},
      {"Automation & Control Systems", kComputerScience},
      {"Computer Science, Cybernetics", kComputerScience},
      {"Computer Science, Software Engineering", kComputerScience},
      {"Robotics", kComputerScience},
      {"Imaging Science & Photographic Technology", kComputerScience},
      {"Transportation Science & Technology", kComputerScience},
      {"Computer Science, Interdisciplinary Applications", kMathematicalMethods},
      {"Operations Research & Management Science", kMathematicalMethods},
      {"Mathematics, Applied", kMathematicalMethods},
      {"Statistics & Probability", kMathematicalMethods},
      {"Engineering, Industrial", kMathematicalMethods},
      {"Mathematics", kMathematicalMethods},
  };
  return rows;
}

/// Names for the 19 disciplinary groups, used as legend text.
inline const std::array<std::string_view, 19>& factor_group_names() {
  static const std::array<std::string_view, 19> names = {
      "Agri Sci",          "Biomed Sci",         "Business & MGT",
      "Chemistry",         "Clinical Med",       "Cognitive Sci",
      "Computer Science",  "Ecol Sci",           "Econ Polit & Geography",
      "Engineering",       "Environ Sci & Tech", "Geosciences",
      "Health & Social Issues", "Infectious Diseases", "Materials Sci",
      "Mathematical methods", "Physics",          "Psychology",
      "Social Studies",
  };
  return names;
}

inline constexpr std::array<std::string_view, 4> kFourGroupNames = {
    "Biomedical sciences", "Physical sciences", "Environmental sciences", "Social sciences"};

}  // namespace scimap
