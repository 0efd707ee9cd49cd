#pragma once
// Generated by gen_fixtures.py (scipy 1.15.3). Do not edit by hand.
#include <vector>

namespace fixtures {

struct ShapiroFixture { const char* name; std::vector<double> x; double w; double p; };
struct GroupFixture { const char* name; std::vector<std::vector<double>> groups; double stat; double p; };
struct TableFixture { const char* name; std::vector<std::vector<double>> rows; double stat; double p; };
struct ScalarRef { const char* name; double value; };

inline const std::vector<ShapiroFixture>& shapiro() {
  static const std::vector<ShapiroFixture> k = {
    {"int_1_to_10", {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0}, 0.9701646110856056, 0.8923673061902978},
    {"normal_n20", {0.48398252773810624, -0.05369281733950327, 0.4667864289572402, 0.20227489929360437, -0.6886451323181887, -1.477784528155524, 1.192569751031565, -0.14891127015630198, -1.6157736780384722, -1.2093271792576479, 0.1494680262444813, 0.5792296003234518, -0.30212320796918785, 1.8620992868242092, -0.11192250716114388, -1.234297603979324, 0.23220205645452607, -1.1269270246226706, 0.23434048385780742, 1.3155716251983924}, 0.9617080584215656, 0.5785105183521648},
    {"normal_n50", {5.253051224638788, 7.380989337439401, 4.249323162598203, 6.819722665656757, 4.19028590397167, 8.254043016712771, 6.664011619516749, 4.496962606809332, 4.217552647506645, 5.891478914595469, 6.782555885475287, 2.650617890649596, 4.795050448298291, 2.5438138090692193, 4.038190828244426, 7.608745596177039, 5.68388476800155, 6.778377990015489, 3.7199643702646945, 3.9462382763110715, 7.834433369671012, 3.8195282652994855, 6.162153440804688, 7.420392392115565, 3.208704949444731, 7.281105117175047, 8.99822232861405, 6.249175582420245, 7.71032030826933, 3.09239585676929, 5.712876904492637, 6.713538346647434, 5.168944368417559, 4.460732005590124, 5.084279152665846, 5.032972620117238, 4.687747929592619, 6.117665153029529, 6.949321166996796, 2.9372318166776687, 7.893184024174255, 2.7798492211439845, 4.5197195109758885, 6.331717766441163, 5.812423116917356, 7.252582636113003, 7.680817272497144, 6.295428242659408, 4.3417325296773255, 10.420358919730475}, 0.9774265036092745, 0.44926520969007466},
    {"uniform_n25", {0.2540548387390833, 0.7037589184797832, 0.28595550769757727, -0.9249766133291208, 0.19569552102132692, 0.7913938997607259, 0.9460805141743971, 0.14394172846379805, -0.6440251019949073, 0.8250537904194859, -0.22222014977510973, -0.4907638850170766, 0.7700926188743142, -0.09425345728420753, -0.27385684736424554, -0.0023395845037954555, 0.2005803500406036, 0.7697504052712414, 0.022928716009047445, -0.21162233272401987, 0.41410846307196514, 0.8014924893889812, 0.29405930176131334, 0.30851652314145483, 0.8963460903069853}, 0.9472844383381476, 0.21760033463153633},
    {"exponential_n30", {3.4080686428510947, 0.8129143063197718, 0.8399586239205465, 0.2936501847199602, 0.19557581040974292, 0.36910554116638017, 2.382370840219717, 1.2115402953758814, 2.248243102632851, 0.24344755079897742, 1.0205710743763046, 0.12208148818599647, 0.3304157835547122, 1.1182145614633379, 0.06733451127292929, 0.893248458170615, 0.0579098516763622, 0.44523308310639303, 0.03373015266915396, 1.7479989585994335, 0.19655819476042322, 1.3839596354885129, 3.586633113170482, 2.2163282028479, 0.07417880944380463, 0.283784576280604, 0.38725454418800154, 5.626313184126694, 2.519987161326067, 0.06106041904896369}, 0.7910250336966765, 4.5181039207451034e-05},
    {"lognormal_n15", {2.896934028677451, 11.121478857868839, 0.6728912853865383, 0.9305945055084315, 1.1649479749023701, 1.948581537359459, 1.4561750705107204, 2.9668520656538195, 0.8427924843339565, 1.3817932107393944, 6.329885988688021, 1.03177717372163, 0.567547075415372, 1.806087542398507, 0.35879859579485207}, 0.658172597078515, 9.182702965089319e-05},
    {"heavy_tail_n40", {-0.23761885404750804, 3.5324138323490186, 0.2507443298667236, -1.2204918294979672, 1.4843861460999992, -1.3122147416219536, 2.5843631497337456, 0.2797554006700717, -0.23235448609551096, 0.9394326452090713, 0.05980504000605843, -0.13434420334328473, 0.971693830022044, 1.0193838426795854, -1.2068731519015587, -0.2042772394397545, 0.8626687540021484, -1.0466030170677538, -0.3346588289144874, 0.7444214253021687, 1.187581659687927, 0.4423746584218905, -1.912860706780648, -2.8443546958710955, 1.1513568377562882, -0.8992851021811786, -0.19849217442997658, -1.1880668267003553, -0.4117607605254354, -1.0578253184561612, -0.38256907255118716, 0.49297337351852666, 1.1365458415109688, -0.5553707692003289, 1.7311055969810805, -1.6388336050193917, -0.40527080913873853, 0.6787557669951936, 0.8301591829579695, -4.935964751891554}, 0.95114742813386, 0.0830516775640569},
    {"bimodal_n24", {-2.710302830425561, -2.715141450162225, -2.5857554651261205, -1.9930532221683785, -2.406493385863848, -3.5698940718856598, -3.4257611896919946, -3.3908066704673097, -2.8668715240319664, -3.2807823785964914, -2.91298611485875, -2.4267799031528816, 2.970804036855741, 2.7373588981077863, 3.1842748491126978, 3.892759230176864, 3.580710798647381, 2.2073478320434434, 2.2247957038573234, 2.3652393232739573, 2.328479349750673, 2.67005643594873, 2.7429048049448808, 3.2702229655388986}, 0.7857303218604702, 0.00017372587392382015},
    {"normal_n8", {-0.1834968490061454, 1.741576298201559, -0.5121326317938618, 0.17036996692247672, -2.2902387701050397, -1.2025536834008344, 2.0180113820595444, 0.8483736156123753}, 0.9738648918976439, 0.9264900617284468},
    {"uniform_n5", {0.1908880629379447, 0.16670020883680836, 0.45459791845509, 0.7147406958868255, 0.6718360493808776}, 0.8667318218973303, 0.2534407990776891},
    {"tiny_n3", {0.2, 1.7, 0.9}, 0.9985207100591715, 0.9265257498675974},
    {"normal_n20_outlier", {0.48398252773810624, -0.05369281733950327, 0.4667864289572402, 0.20227489929360437, -0.6886451323181887, -1.477784528155524, 1.192569751031565, -0.14891127015630198, -1.6157736780384722, -1.2093271792576479, 0.1494680262444813, 0.5792296003234518, -0.30212320796918785, 1.8620992868242092, -0.11192250716114388, -1.234297603979324, 0.23220205645452607, -1.1269270246226706, 0.23434048385780742, 1.3155716251983924, 12.0}, 0.5401132988355384, 4.873424788144445e-07},
  };
  return k;
}

inline const std::vector<GroupFixture>& levene() {
  static const std::vector<GroupFixture> k = {
    {"mirrored_dispersion", {{0.0, 1.0, 3.0}, {10.0, 11.0, 13.0}}, 6.144012819509807e-31, 1.0},
    {"equal_scale_3g", {{-0.1396799653740319, 1.0544757661675177, -1.0952960856439735, -0.07666102266502432, -1.0678452212920284, 0.31012948065390666, 1.2152094805788918, -2.0198336882005035, 0.4446084658334905, -0.47230310985594526, -1.686491327516814, -1.5382785227398998}, {0.666342427814813, 1.9887814341261416, -1.4337988899460519, -1.746146060074383, -0.31236359029154853, 0.16431091472226741, -1.2244914146934427, 0.4949021558515104, -1.3371234770668994, -0.05050087860541259, -0.054657171662238685, -1.5315528284969788}, {0.7019235642905752, -0.2910776752925342, 0.9290755558881515, 0.4732613891110537, 0.1682101435263624, -1.1984918921458658, 0.6082962689736335, -0.27192313273395513, -0.15506265381583773, -0.2096866466173085, 1.412306258082475, 2.1314537564771165}}, 0.6050349959704213, 0.5520006930026007},
    {"scaled_3g", {{-0.1396799653740319, 1.0544757661675177, -1.0952960856439735, -0.07666102266502432, -1.0678452212920284, 0.31012948065390666, 1.2152094805788918, -2.0198336882005035, 0.4446084658334905, -0.47230310985594526, -1.686491327516814, -1.5382785227398998}, {0.666342427814813, 1.9887814341261416, -1.4337988899460519, -1.746146060074383, -0.31236359029154853, 0.16431091472226741, -1.2244914146934427, 0.4949021558515104, -1.3371234770668994, -0.05050087860541259, -0.054657171662238685, -1.5315528284969788}, {7.019235642905752, -2.910776752925342, 9.290755558881514, 4.732613891110537, 1.682101435263624, -11.984918921458657, 6.082962689736336, -2.719231327339551, -1.5506265381583773, -2.096866466173085, 14.123062580824751, 21.314537564771165}}, 15.11435755850949, 2.189742892598312e-05},
    {"identical_2g", {{3.3343296780470753, 2.3960486194919772, 2.3962267236062265, 3.4141530757798875, 0.47235639275724806, -0.2632331860197974, 2.220046078541357, 2.063392370020331, 0.6445220437817232}, {3.3343296780470753, 2.3960486194919772, 2.3962267236062265, 3.4141530757798875, 0.47235639275724806, -0.2632331860197974, 2.220046078541357, 2.063392370020331, 0.6445220437817232}}, 0.0, 1.0},
    {"mixed_sizes_4g", {{0.5683211930233251, 0.48088484481813276, -0.7394746437181662, -0.7361881308062938, -3.5256854868836727, -0.377524490440726, 2.7902236222823364, -1.0591583363878954}, {2.186957872353328, -2.1979757050702426, 3.341414164372683, 2.383763277042643, -1.3562333740724792, -0.7691785935820552, 0.7563490468302912, -1.281902903335858, -1.745271766245531, 0.2301317398115543, 3.1205606421026655, 0.739750645994062}, {0.3416206936355082, 0.12378100506443021, 0.10368096757184243, -0.25764535646215847, -0.2870513957041121, -0.5270539114761018}, {-2.210457490710027, 1.0695302262686996, -2.4231511273677064, -1.5686722345133348, 1.2131369780358465, 3.0217371617906634, 2.6365256765251477, 0.17912421333055878, -0.21949373035755532, -0.07853141371249851}}, 2.74505380752052, 0.05914604730388996},
    {"uniform_vs_normal", {{-1.4911854964151634, 0.7201673412771274, -1.6238065146350489, 1.1350777662989273, 0.16774398655109746, -1.5643095788485888, -1.403821540984922, -1.1164667331728793, -1.863252851033352, 1.385240645355866, 0.9831465978541232, -1.5954592497688247, 1.185864329351956, 1.7047730763507571, -1.0551834105627123}, {-0.1168461113818122, -0.9313660461058263, 0.36403040060966146, -0.3230445624586719, -0.28286326080034196, -1.2963111209879432, 1.6632625606077631, 1.4873946933783861, -0.5239031231168298, 0.22646142364099853, 0.9684024326550396, 0.7351227000485362, 1.4774608841265915, -0.21771652972331315, -0.7877356698183557}}, 9.026238809973002, 0.005556979666016431},
    {"small_3g", {{0.13186264591295227, 0.9057080527570945, -1.4357721684438325, 0.005251706352246671}, {2.677226999079381, -4.432052330202753, -2.7129376169989303, 1.5019774835117112}, {0.0782659706214378, -0.3251292129509103, 0.03836178491534655, 0.15494836584953434}}, 22.13016617371253, 0.0003351767363506438},
    {"five_groups", {{-0.46286571899058454, -1.3081191606711249, -0.8986890445369731, 0.43451557265440083, -1.0089389578982542, -1.6337089610577749}, {-2.84710981398751, -1.3792952039390733, 3.179765549542723, -1.6283241655805025, 0.16383196743099795, -0.5054611237895721}, {2.4861998635473093, 1.3463426550236004, -0.15559017971709044, 0.5997451134736913, 0.7805964377659637, 0.841067304073712}, {0.6171237521716672, -0.9020103776878806, -1.5150579359597558, -0.4606108943192593, -1.4945467273650304, -0.5560452429105899}, {0.20577518781234652, -1.9047200831714879, 4.356775820980359, 1.0086075236394174, -3.7157192979688727, -2.966455990860004}}, 3.9625066992405777, 0.012633002101022275},
  };
  return k;
}

inline const std::vector<GroupFixture>& anova() {
  static const std::vector<GroupFixture> k = {
    {"spec_pair", {{1.0, 2.0, 3.0}, {3.0, 4.0, 5.0}}, 6.0, 0.07048399691021996},
    {"three_groups", {{0.9250249039054177, 1.7744489356694524, 0.48742829210302424, 0.5300702536920712, 0.7193424147103243, 0.6563595056819203, -0.13087303457803473, 0.34919781610235334, -0.8569530563887472, -0.569249506199867}, {-0.6252574025046416, 0.46452024010738674, 0.48282902195079413, 1.0824929670082093, 0.7187785168132446, 0.3940762792254868, 1.6796651503963507, 0.6759223220146997, -1.3241820974047414, 0.040944685457424246}, {0.7338106769176378, 0.8328816109203988, 0.6987521834932966, 1.9577562426858774, -0.265375453220531, 0.6466604098124767, 2.009896099034492, 3.1079953418590183, 2.335288046612235, 0.8008139792974953}}, 3.587191666857148, 0.041538570530464676},
    {"unbalanced", {{-0.5777953536347628, 0.9834928341669535, -1.9052237266320167, 0.2692274419035089, 0.7601981656360087}, {2.6737660993774752, 2.198464923764683, 0.12483691106953043, 0.6645315736315411, 1.8823317005115898, 1.6067667260077192, 2.3270617007401917, 3.8558395096869478, 3.086091861836545}, {-0.23902265560539604, 1.3967449075504264, 0.5295364470919504, 0.8649224227293394, 1.8653194329920546, 1.7509687905332463, 0.9092664516181063}}, 6.969789065249412, 0.005734426178042048},
  };
  return k;
}

inline const std::vector<TableFixture>& friedman() {
  static const std::vector<TableFixture> k = {
    {"monotone_4x3", {{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}}, 8.0, 0.018315638888734182},
    {"tied_rows", {{1.0, 1.0, 2.0}, {3.0, 1.0, 2.0}, {2.0, 2.0, 2.0}, {1.0, 3.0, 3.0}, {2.0, 1.0, 3.0}}, 3.000000000000002, 0.2231301601484296},
    {"random_6x4", {{1.8341034412173904, -0.5060503661670892, 0.33172470898903433, 0.6012017898313481}, {1.4973241460488278, -0.5524041884973014, -1.5641559926084243, -0.21713554771798263}, {0.42080396443188633, 0.425691553128271, -1.3724264002460647, -0.49824784346642326}, {-1.0673778338216364, -1.3030708611974333, -1.592139736587986, -0.5616980713496695}, {0.825282807172375, 1.3223905319367386, -2.232077269476523, -0.8970288743372332}, {0.3573435129734278, 0.32021346523178457, 2.623722586843171, -0.3257854665766976}}, 5.0, 0.1717971442967335},
  };
  return k;
}

inline const std::vector<ScalarRef>& scalar_refs() {
  static const std::vector<ScalarRef> k = {
    {"norm_cdf_196", 0.9750021048517795},
    {"norm_cdf_m05", 0.3085375387259869},
    {"norm_sf_559", 1.1353480619032137e-08},
    {"norm_ppf_0025", -1.9599639845400545},
    {"norm_ppf_09", 1.2815515655446004},
    {"norm_ppf_1e6", -4.753424308822899},
    {"chi2_sf_8_2", 0.018315638888734182},
    {"chi2_sf_31_7", 0.8755998216939673},
    {"chi2_sf_45_10", 2.1747272576671776e-06},
    {"f_sf_6_1_4", 0.07048399691021996},
    {"f_sf_25_3_16", 0.09653678666450045},
    {"f_sf_01_5_8", 0.9893422187918277},
    {"t_sf_2449_4", 0.03524199845510997},
    {"t_sf_13_30", 0.10175047926905845},
  };
  return k;
}

}  // namespace fixtures
