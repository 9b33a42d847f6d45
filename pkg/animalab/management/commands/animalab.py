from django.core.exceptions import ImproperlyConfigured
from django.core.management.base import BaseCommand, CommandError

import animalab as lab
from animalab import (
    encoding, enumeration, experiments, hardcode, kernels, render, samplers,
    walks)
from animalab.core import EMPTY, Animal, is_directed_animal
from animalab.exceptions import AnimalabError
from animalab.utils import (
    dumps, load_json, parse_int_set, parse_params, write_text)


class Command(BaseCommand):
    help = lab.gettext_lazy(
        "Sample, count and check directed lattice animals.")

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest='action', required=True)

        sample = actions.add_parser('sample')
        sample.add_argument('--model', required=True, choices=sorted(
            list(hardcode.model_cli) + ['pyramid', 'half']))
        sample.add_argument('--radius', type=int)
        sample.add_argument('--size', type=int, default=4)
        sample.add_argument('--window', type=int, default=0)
        self.add_stream_arguments(sample)

        walk = actions.add_parser('walk')
        walk.add_argument('--kind', required=True,
                          choices=sorted(hardcode.walk_kind_cli))
        walk.add_argument('--steps', type=int, default=20)
        walk.add_argument('--depth', type=int, default=3)
        self.add_stream_arguments(walk)

        kernel = actions.add_parser('kernel')
        kernel.add_argument('--kind', required=True,
                            choices=sorted(hardcode.kernel_kind_cli))
        kernel.add_argument('--set', required=True, dest='source',
                            help='admissible set, e.g. 0,2,6')
        row = kernel.add_mutually_exclusive_group()
        row.add_argument('--enumerate', action='store_true')
        row.add_argument('--sample', type=int, metavar='N')
        self.add_stream_arguments(kernel)

        count = actions.add_parser('count')
        count.add_argument('--kind', required=True,
                           choices=sorted(hardcode.count_kind_cli))
        count.add_argument('--n', type=int, required=True)
        count.add_argument('--naive', action='store_true')
        count.add_argument('--table', action='store_true')
        count.add_argument('--oeis', action='store_true')
        count.add_argument('--output')

        verify = actions.add_parser('verify')
        verify.add_argument('--identity', required=True, choices=list(
            hardcode.identity_names) + [hardcode.identity_gencomb])
        verify.add_argument('--params', nargs='*', default=[])
        verify.add_argument('--sweep', type=int, default=0)
        verify.add_argument('--seed', type=int,
                            default=hardcode.default_seed)
        verify.add_argument('--output')

        experiment = actions.add_parser('experiment')
        experiment.add_argument('name',
                                choices=sorted(experiments.EXPERIMENTS))
        experiment.add_argument('--model', default='uip',
                                choices=sorted(hardcode.model_cli))
        experiment.add_argument('--radius', type=int, default=1)
        experiment.add_argument('--size', type=int, default=4)
        experiment.add_argument('--height', type=int, default=100)
        experiment.add_argument('--trials', type=int, default=10000)
        experiment.add_argument('--seed', type=int,
                                default=hardcode.default_seed)
        experiment.add_argument('--streams', type=int,
                                default=hardcode.default_streams)
        experiment.add_argument('--format', default=hardcode.report_csv,
                                choices=[hardcode.report_csv,
                                         hardcode.report_json])
        experiment.add_argument('--param', nargs='*', default=[])
        experiment.add_argument('--calibrate', action='store_true')
        experiment.add_argument('--output')

        draw = actions.add_parser('render')
        self.add_animal_arguments(draw)
        draw.add_argument('--style', default=hardcode.render_squares,
                          choices=[style for style, _ in
                                   hardcode.render_style])
        draw.add_argument('--color-order', action='store_true')

        encode = actions.add_parser('encode')
        self.add_animal_arguments(encode)

        decode = actions.add_parser('decode')
        decode.add_argument('file', nargs='?', help='path JSON file')
        decode.add_argument('--path', help='encoding path, e.g. 0,1,-1')
        decode.add_argument('--path-class', default=hardcode.path_class_any,
                            choices=[c for c, _ in hardcode.path_class])
        decode.add_argument('--output')

    def add_stream_arguments(self, parser):
        parser.add_argument('--seed', type=int, default=hardcode.default_seed)
        parser.add_argument('--stream', type=int, default=0)
        parser.add_argument('--output')

    def add_animal_arguments(self, parser):
        parser.add_argument('file', nargs='?', help='animal JSON file')
        parser.add_argument('--path', help='encoding path, e.g. 0,1,-1')
        parser.add_argument('--output')

    def handle(self, *args, **options):
        handler = getattr(self, options['action'])
        try:
            text = handler(options)
        except (AnimalabError, ImproperlyConfigured) as error:
            raise CommandError(str(error))
        if options.get('output'):
            write_text(options['output'], text)
        else:
            self.stdout.write(text)

    def rng(self, options):
        return walks.RngStream(options['seed'], options['stream'])

    def animal(self, options):
        if bool(options.get('file')) == bool(options.get('path')):
            raise ImproperlyConfigured(
                "Give either an animal JSON file or --path")
        if options['file']:
            return Animal.from_json(load_json(options['file']))
        return encoding.decode(parse_int_set(options['path']))

    def path(self, options):
        if bool(options.get('file')) == bool(options.get('path')):
            raise ImproperlyConfigured(
                "Give either a path JSON file or --path")
        if options['path']:
            return parse_int_set(options['path'])
        data = load_json(options['file'])
        # encode writes {"path": [...]}; a flat array is accepted too
        if isinstance(data, dict):
            data = data.get('path')
        if not isinstance(data, list) or not all(
                isinstance(step, int) and not isinstance(step, bool)
                for step in data):
            raise ImproperlyConfigured(
                "%s does not hold an integer path" % options['file'])
        return tuple(data)

    def sample(self, options):
        rng = self.rng(options)
        model, r = options['model'], options['radius']
        if model == 'pyramid':
            animal = samplers.sample_uniform_pyramid(options['size'], rng)
        elif model == 'half':
            animal = samplers.sample_uniform_half_pyramid(
                options['size'], options['window'], rng)
        elif model == 'bhp' and r is None:
            animal = samplers.sample_bhp(rng)
        else:
            sampler = experiments.BALL_SAMPLERS[hardcode.model_cli[model]]
            animal = sampler(r if r is not None else 1, rng)
        data = animal.to_json()
        data['classification'] = is_directed_animal(animal)._asdict()
        return dumps(data)

    def walk(self, options):
        rng = self.rng(options)
        kind = hardcode.walk_kind_cli[options['kind']]
        if kind == hardcode.walk_kind_raw:
            trace = walks.sample_walk(options['steps'], rng)
        elif kind == hardcode.walk_kind_shaved:
            trace = walks.shave(walks.sample_walk(options['steps'], rng))
        elif kind == hardcode.walk_kind_nonpos:
            trace = walks.sample_shaved_nonpos(options['depth'], rng)
        else:
            trace = walks.sample_walk_nonneg(options['steps'], rng)
        return dumps(trace.to_json())

    def kernel(self, options):
        kind = hardcode.kernel_kind_cli[options['kind']]
        source = parse_int_set(options['source'])
        if options['sample'] is not None:
            if options['sample'] < 1:
                raise ImproperlyConfigured("--sample takes a positive count")
            rng = self.rng(options)
            targets = [kernels.sample_transition(kind, source, rng)
                       for _ in range(options['sample'])]
            return dumps({'kind': kind, 'source': list(source),
                          'targets': [repr(EMPTY) if B is EMPTY else list(B)
                                      for B in targets]})
        table = kernels.enumerate_row(kind, source)
        return dumps({
            'kind': kind,
            'source': list(table.source),
            'row': {repr(EMPTY) if B is EMPTY else
                    ','.join(str(b) for b in B): p for B, p in table},
        })

    def count(self, options):
        kind = hardcode.count_kind_cli[options['kind']]
        n = options['n']
        if options['table']:
            return dumps(enumeration.CountTable.build(kind, n).to_json())
        value = enumeration.count_naive(kind, n) if options['naive'] \
            else enumeration.count(kind, n)
        data = {'kind': kind, 'n': n, 'count': str(value)}
        if options['oeis']:
            data['oeis'] = enumeration.oeis_assignment(
                min(n, len(hardcode.oeis_a005773) - 2))
        return dumps(data)

    def verify(self, options):
        name = options['identity']
        params = parse_params(options['params'])
        if options['sweep']:
            failures = enumeration.random_sweep(
                name, options['sweep'], options['seed'])
            return dumps({'identity': name, 'trials': options['sweep'],
                          'failures': [f._asdict() for f in failures]})
        if name == hardcode.identity_renewal and 'asymptotics' in params:
            return dumps(enumeration.verify_renewal_asymptotics(
                params['asymptotics']))
        names = enumeration.GENCOMB if name == hardcode.identity_gencomb \
            else (name,)
        results = [enumeration.verify_identity(each, params)._asdict()
                   for each in names]
        return dumps(results if len(results) > 1 else results[0])

    def experiment(self, options):
        config = experiments.ExperimentConfig(
            name=options['name'],
            model=hardcode.model_cli[options['model']],
            radius=options['radius'], size=options['size'],
            height=options['height'], trials=options['trials'],
            seed=options['seed'], streams=options['streams'],
            fmt=options['format'], params=parse_params(options['param']),
            calibrate=options['calibrate'],
        )
        return experiments.experiment(config).render(config.fmt)

    def render(self, options):
        return render.render_svg(self.animal(options), options['style'],
                                 options['color_order'])

    def encode(self, options):
        return dumps({'path': encoding.encode(self.animal(options))})

    def decode(self, options):
        path = encoding.check_path(self.path(options), options['path_class'])
        return dumps(encoding.decode(path).to_json())
