#include "counterbench/text_codec.hpp"

#include <sstream>

namespace counterbench::text {

// Lower-case English words (from a word-frequency list, top 60k entries) that
// match the syllable shape produced by generate_names. Anything outside that
// shape can never be generated, so it is not listed.
static constexpr const char* kStoplistData =
    "baba babar babe babel babes babi babu bada bade baden bader badu bagel baka bakar bake "
    "baker bakes baku bala bale bales bali balor bama bamako bana banal banana bananas bane "
    "bani bapu bara barak baraka bare bares bari baroda baron barone baronet baru basal base "
    "basel baseman bases basil basin basis basu bata bate bateman bates bateson batik baton "
    "batu bazar bebe bebop bede before began begat beget begin begone begum begun bela belarus "
    "belive belize belo beluga benazir bene benefit beni benin benito berate beret beset "
    "beside besides beta betas betel betis beto bevan bevel bevin bezel bezos bibi bide biden "
    "bidet bifida bigot bike biker bikes bikini bikinis biko bilal bile bipedal bipolar bison "
    "bite biter bites bitumen boba boban bobo bode bodega boden bodes bogan bogo bogota bogus "
    "bogut boko boku bola bolan bole bolero boles bolin bolivar bolo bolus bona bone boner "
    "bones bonita bonito bono bonobo bonobos bonus bonuses bora borat bore boredom borer bores "
    "boris boro boron bose bosom boson bovine bozeman bozo buda bukit bure buren busan buses "
    "busi butane bute buti dada dade dagon dakar dakota dakotas dale dalek dales dali dalit "
    "damage damages dame dames damon dana dane danes dani danilo danube dara dare daren dares "
    "dari darin data dataset date dates dative dato datum dave davide davina davis davison "
    "davos daze debate debater debates debi debit debut dede defame defer defile define "
    "defines defo defuse degas deke dela delano dele delete deletes deli deliver delores delos "
    "delude deluge demar demeter demi demise demo demon demos demure dena denali dene denim "
    "denis denise denison denote denotes depo depose deposit depot dera dere derek deride "
    "derive derives deron derozan derulo deseret desi desire desires desoto deter deva devel "
    "develop devi devil devin devine devise devises devito devo devon devos devote devotes "
    "diderot didi dido digi digimon digit digital dike dikes dilate dili dilute dima dimas "
    "dime dimer dimes dimitar dina dinamo dinar dine diner dinero dines dino dinos dipole dire "
    "disuse dita diva divan divas dive diver dives divi divide divider divides divina divine "
    "divisor dodo doge dolan dole dolores doma dome domes domini dominik domino dominos "
    "dominus domo dona donal donate donates donato done donegal dono donor donovan donut dope "
    "dora dorado doral doran dore doren dori doris doritos dosage dosages dose doses dota dove "
    "dover doves doze dozen dozer dube duda dude dudes dugan dukakis duke dukes duma dumas "
    "dune dunedin dunes dupe duper dupes dura duran dutiful duval duvet faber fade fader fades "
    "fagan fake faker fakes falafel falun fame famer famine famines fane fanon farage fare "
    "fares farina faris faro faso fata fatal fatale fate fateful fates fatima fave favela "
    "faves favor faze feder federal federer fedor fedora fela feline felines felipe felon fema "
    "female females femi femoral femur feral feta fetal fete fetus fetuses fever fiba fiber "
    "fibula fide fidel fides fido fifa fife fifi fifo figaro figure figures fila file filer "
    "files filet filip filipe filo fina final finale finales fine finer fines finite fire "
    "fireman firemen fires fisa fite five fiver fives folate foles fomo fora forage foramen "
    "fore forego foreman forever forum foto fulani fume fumes funeral furor furore fuse fuses "
    "futa futile futon future futures fuze gaba gabe gabi gabon gabor gadot gaga gagarin gage "
    "gala gale galen galena gales galina galore gama gamal game gamer games gametes gamora "
    "gamut gana gape garage garages gare garuda gases gasol gate gates gato gator gatos gave "
    "gavel gavin gaza gaze gazebo gazes gazeta gelatin gelato gemini gene genera general genes "
    "genesis genet geneva genital geno genome genomes genus gere geri getup giga gigabit gigi "
    "gigolo gila giles gina gini gino giri giro gisele gita give given giver gives givin giza "
    "gobi godin godiva godot gogo gogol goku golan golem goma gomes gona gone goner gopal gora "
    "goran gore goro goto govan gove gulen gumi guru gurus kabir kabuki kabul kade kaduna "
    "kagame kagan kagura kaka kala kalam kale kali kama kamal kamala kamara kamel kamen kami "
    "kamil kana kanan kanata kane kano kanu kapil kapur kara karam karan karat karate kare "
    "karel karen kari karim karin karina karine karo karol kasi kasim kata katana katara kate "
    "kato kava kazan keke kemal kenan keno kenobi kerala keratin keren keri keto ketone "
    "ketones ketosis kevan kevin kigali kike kiki kiko kilo kilos kimi kimono kimura kinase "
    "kinases kino kira kiran kiri kirin kita kite kites kiva kobe kobo koda kodak kodi kofi "
    "koga kogan koko kokomo kokoro kola kolo komen komodo kona konami kone kono koran kosovo "
    "kota kotaku koto kotor kubo kubota kudo kudos kuma kumar kumari kumasi kunal kunis kuro "
    "kuroda kuta kuti laban label labor laborer lada laden lager lagi lago lagos laguna lake "
    "laker lakes lakota lala lalo lama lamar lamas lame lamela lamina laminar lana lane lanes "
    "lani lapel lapis lara laredo laser lasik lata late later lateral latif latimer latin "
    "latina latinas latino latinos lava laval laver lavine lazar lazaro lazarus lazer lazuli "
    "lebanon leben leda legal legate leger legit lego legolas legos legume legumes lela lemon "
    "lemur lena leni lenin leno lenore lenovo lepage leper leto level leven lever leveson levi "
    "levin levine levis levites levon libel liber liberal libido libor lidar lido life lifer "
    "lifes liga like liken likes lila lili lilo lima lime limes limit limiter limo limoges "
    "limon limos lina line lineker lineman linemen linen liner lines lino linus lipa lipo lira "
    "lire lisa lise lita lite liter literal live liven liver lives livin liza lobe lobes lobo "
    "lobos lode lodi logan logano login logo logon logos loki loko lola loli lolita lolo lolol "
    "lololol loma lomas lone loner lope lopes lora loras lore loren lorena loreto lori lorimer "
    "lose loser loses lotus lovato love lover loves lovin lozano lube ludo lugano lugar luge "
    "luger lugo luka lukaku lukas luke lula lulu lumen luna lunar lune lupe lupin lupita lupo "
    "lupus lure lures lusaka lute luton luzon mabel madam madame madan made madera madi "
    "madigan madison madoka maduro maga mage mages magi magus makati make maker makes maki "
    "makin mako makoto mala malabar malaga malala male malek males mali malibu malik maliki "
    "malin malo malone mama maman mamas mame mami mana manage manager manages manama mane "
    "manes manet mani manila manipur mano manolo manon manor manu manuka manure manus maputo "
    "mara marat mare marek maren mares mari maribor marika mariko marin marina marinas marine "
    "mariner marines marino maris marisa marisol marital maro maru maruti masa masaki masala "
    "mason mata matador mate mater mates mati mato mature matures maven mavis maze mazes medal "
    "medan medi medina medusa mega megan megumi mela melanin melina melo melon meme memes memo "
    "memos mena menon menu menus mera mere meri merida meriden merino merit meru mesa meso "
    "mesut meta metal mete meter midas midi midori migos mika mikado mikasa mike mikel mikes "
    "miki miko miku mila milan milano mile milena miler miles mili milo milos mime mimi mimo "
    "mimosa mimosas mina minami minaret minas minato mine miner mineral mines mini minibar "
    "minibus minima minimal minimum minis minivan mino minor minos minot minus minute minutes "
    "mira mirage miramar mire miri miro misa misaki mise miser mises miso misuse mita mite "
    "miter mites mito mitosis mizuno mobil mobile mobiles mobo moda modal mode model modem "
    "modena modes modi modo modular module modules modulus modus mofo mogul mola molar mole "
    "moles molina moline moma momo mona mone monet moni monika moniker monitor mono monomer "
    "mora moral morale morales moran morata more morel morena moreno mores moreton mori morin "
    "morison moro moron morose mose moser moses mosul mota mote motel motes moti motif motive "
    "motives moto motor move mover moves movin mubarak muda mugabe mulan mule mules muna muni "
    "munir mura mural murali murano murat murata murine musa muse muses musik mutate mute "
    "mutes nabi nabil nada nadal nader nadi nadine nadir nadu naga nagano nagar nagel nagisa "
    "naka nala nama name names nami nana nanak nani nano napa nape napoli nara nari narita "
    "naruto nasa nasal nasi nasir nata natal natale nate native natives nato natur natura "
    "natural nature natures nava naval navas nave navel naver navi nazi nazir nazis nebula "
    "negan negate negates neko nema nemesis nemo nene nepa nepal nepali neri nero neruda neto "
    "neva nevada neve never neves nevin nevis nida nigel niger nike nikes niki nikita niko "
    "nikola nikolas nikon nikos nila nile niles nina nine nines nino niro nisa nisi nita nite "
    "nitin niven nizam nobel nobis nobu nodal node nodes nodules nogales nola nolan noma nome "
    "nomi nominal nomura nona none noni nono nope nora nori nose noses nota note notes nova "
    "novak novel novi novo novus nude nudes nuke nukes numa numan numeral numero nunavut nunes "
    "nuri nusa padi pagan pagano page pager pages paget pagoda paki pala paladin palatal "
    "palate palates pale paler pales pali palin palo paloma palos pamela pana panama pane "
    "panel panera panes pani panini papa papal papas pape paper papi para parade parades "
    "paradis paragon param parapet paras parasol pare paredes pareto pari paribas paris parise "
    "paro parole pasa paso pata pate patek patel pater pati patil patina paton pave pavel "
    "paves pedal pedi pedo pegasus pele pelosi peloton pena penal penile penis penises pepe "
    "pepin pera perak pere perera peres peri peridot peril pero peron perot peru peruse peso "
    "pesos peta petal pete peter petit petite pika pike pikes pilar pilate pilates pile piles "
    "pilot pima pina pine pineda pines pino pinot pinus pipe piper pipes pirate pirates pires "
    "pisa pita pitiful pivot pivotal pogo poke pokemon poker pokes polak polar polaris pole "
    "poles poli polis polite polo pomona pope popes popo popular populus popup pore pores pose "
    "posen poser poses posi posit potato potus pubes puget puke pulis puma pumas pune pupa "
    "pupil pura pure purer puri purim purina puritan puta putin rabat rabe rabi rabin rada "
    "radar radek rader radon rafa rafale rafe rafi raga rage rager rages rake rakes rakuten "
    "rama ramada ramadan ramadi raman ramen rami ramiro ramon ramona ramone ramones ramos rana "
    "rani rape rapes rare rarer rasa rata rate rates raton ravage ravages rave ravel raven "
    "raves ravi ravine ravines raza razak raze razer razor reba rebar rebate rebates rebel "
    "rebuke rebukes rebus rebut redo redone refer refine refit refuge refuges refusal refuse "
    "refuses refute refutes regal regan regen regi regime regimen regimes regina regis regular "
    "relate relates relive remade remake remakes remeber remi remit remo remodel remote "
    "remotes removal remove remover removes remus rena renal rename renata renato rene reno "
    "repel repo repos repose repute rerun resale reset reside resides resin resize resume "
    "resumes retake retaken retina retinal retinol retire retires reve revel revere revis "
    "revise revisit revival revive revives revo revoke reza riba rida ride rider rides ridin "
    "rife riga rigor rika riker riki riku rile rime rimes rimini rina rino ripa ripe ripen "
    "ripon risa rise risen riser rises rita ritalin rite rites riva rival rivas rive riven "
    "river rivera rivet rizal robe robes robeson robin robison robo robot rode roden rodin "
    "rogan rogen roger roku role roles roma roman romana romani romano rome romer romero romo "
    "romulan romulus rona ronan roni ronin rope roper ropes rosa rosales rose rosen roses "
    "rosin rosita rota rotate rotates rotator rote roti roto rotor rove rover rube ruben rubin "
    "rude rudi rufus ruger rule ruler rules rumi rumor rune runes rupa rural ruse saba saban "
    "saber sabin sabina sabine sabo sada sadat sade safari safaris safe safer safes saga sagan "
    "sagar sagas sage sager sages saka sake sakes saki sakura sala saladin salafi salam salami "
    "salas salazar sale salem sales salim salina salinas saline saliva salome salomon salon "
    "salute salutes sama samar samara same sami samir samira samus sana sane sani sano sanofi "
    "sara saran sari sarin saris sasa sasaki sasuke sata satan sate sati satin satire satires "
    "sativa sato satu sava savage savages save saver saves savile savin savor sebi sedan "
    "sedate seder sedona sega segal segura selena selene selim selina sema semen semi seminal "
    "seminar semis semite semites sena senate senator senegal senile senor sepa sera serena "
    "serene seri serif serine serum sesame seti seton setup seven sever several severe severin "
    "severus side sidebar sider sides sidi sidon sigil sikes sila silas silo silos sima simi "
    "similar simile simon simona simone sina sine sino sinus sinuses sire siren sires siri "
    "siro sisi sita sitar site sites situ siva sivan size sizes soba sobel sober soda sodas "
    "sodom sofa sofas sofi sokoto sola solana solano solar solaris sole soler soles soli "
    "solider solis solo solomon solon solos solute soma somali somalis some sona sonam sonar "
    "sonata sonatas sone soni sono sonoma sonora sonoran sonos sonu sopa sora sore soren sores "
    "soros sosa soto subaru subunit sudan sudo sudoku sufi suga sugar suge suki sula sulu "
    "sumer sumo sunil super supine sura surat sure suri susan susana suter suture sutures suva "
    "suzi suzuka suzuki taber tabor tabula tabular tada tafe tage tagore taka takagi take "
    "takeda taken taker takes taki takin takumi tala talal tale tales tali taliban talon talus "
    "tama tamaki tamale tamales taman tamar tamara tame tamer tami tamil tamir tana tanaka "
    "tapas tape taper tapes tara taran tarek tarik taro tarot taser tata tatar tate tater tati "
    "tatum tavares tegan tele telekom telugu telus tema tenet tenor tenure tenures tera tere "
    "teresa teri tetanus tete teton teva tiber tibet tibetan tidal tide tides tiger tiki tile "
    "tiles time timer times timo timon timor timur tina tine tino tirade tirana tire tires "
    "tita titan tite titi tito titular titus tivo tivoli tobago tobe tobi tobin toda todo "
    "todos tofu toga togo toke token toki toledo toma tomar tomas tomato tome tomes tomi tomo "
    "tonal tone toner tones toni topeka topo tora tore tori torino toro torus total tote totem "
    "totes toto totoro tove tuba tubal tube tuber tubes tubular tudor tula tulane tulare tulip "
    "tumor tuna tune tuner tunes tunis tupelo turan ture turin tutor tutu vader vadim vagina "
    "vaginal vaginas vagus vala vale valera valeri valet valor vamos vane vape vapor varela "
    "varun varus vasari vase vases veda vedas vega vegan vegas vegeta vela vena veneto venison "
    "venom venus vera vere veritas verizon vero verona veteran veto vevo vibe viber vibes vida "
    "vidal vide vigil vigo vigor vikas vila vile vine vinegar vines vino viper viral virat "
    "virile virus viruses visa visage visas vise visit visitor visor vita vital vitale vitali "
    "vitamin vite vito vitor viva vive vivek vivi vivo vogel vole voles volume volumes vomit "
    "vote voter votes votive zafar zaki zakir zaman zamora zane zanu zapata zara zavala zaza "
    "zeke zenit zeno zero zeros zeta zetas zidane zika zine zola zona zonal zone zones zora "
    "zoran zoro zuko zulu zulus zuma zune zuni ";

const std::unordered_set<std::string>& stoplist()
{
    static const std::unordered_set<std::string> words = [] {
        std::unordered_set<std::string> out;
        std::istringstream in(kStoplistData);
        std::string w;
        while (in >> w) out.insert(w);
        return out;
    }();
    return words;
}

}  // namespace counterbench::text
